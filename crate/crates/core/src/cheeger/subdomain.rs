use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::check::{slack, InequalityCheck, Relation, DEFAULT_REL_SLACK};
use crate::distance::reduced_inradius;
use crate::error::Result;
use crate::geometry::{cut_set_to_polygons, fill_holes, grid_area, quotient_of_set, GridDomain, Point};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetSample {
    pub area: f64,
    pub quotient: f64,
    pub check: InequalityCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubdomainReport {
    pub reduced_inradius: f64,
    /// `1 / ρ̃`.
    pub bound: f64,
    /// Sample 0 is the whole domain.
    pub samples: Vec<SubsetSample>,
    pub min_quotient: f64,
    pub min_margin: f64,
    pub all_hold: bool,
}

/// Checks `|∂S|/|S| >= 1/ρ̃_Ω` on the domain itself and on `samples`
/// random subsets: unions of one to three random disks, intersected with
/// the domain and hole-filled.
pub fn subdomain_bound_suite(g: &GridDomain, samples: usize, seed: u64) -> Result<SubdomainReport> {
    let rho = g.grid_inradius();
    let rt = reduced_inradius(rho, grid_area(g))?;
    let bound = 1.0 / rt;
    let tol = slack(bound, DEFAULT_REL_SLACK, 0.0);
    let grid = g.grid;
    let cells: Vec<usize> = g.interior_cells().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut out = Vec::with_capacity(samples + 1);
    let push = |out: &mut Vec<SubsetSample>, sel: &[bool]| -> Result<()> {
        let filled = fill_holes(grid.nx, grid.ny, sel);
        let polys = cut_set_to_polygons(g, &filled)?;
        if let Some(q) = quotient_of_set(&polys) {
            let area = polys.iter().map(|p| p.area()).sum();
            out.push(SubsetSample { area, quotient: q, check: InequalityCheck::new(q, Relation::GreaterEq, bound, tol) });
        }
        Ok(())
    };
    push(&mut out, g.mask())?;
    let mut attempts = 0;
    while out.len() < samples + 1 && attempts < 20 * (samples + 1) {
        attempts += 1;
        let k = rng.gen_range(1..=3);
        let disks: Vec<(Point, f64)> = (0..k)
            .map(|_| {
                let c = grid.center_of(cells[rng.gen_range(0..cells.len())]);
                let r = rho * rng.gen_range(0.2..1.5);
                (c, r)
            })
            .collect();
        let sel: Vec<bool> = (0..grid.len())
            .map(|i| g.contains(i) && disks.iter().any(|&(c, r)| grid.center_of(i).dist(c) < r))
            .collect();
        push(&mut out, &sel)?;
    }
    let min_quotient = out.iter().map(|s| s.quotient).fold(f64::INFINITY, f64::min);
    let min_margin = out.iter().map(|s| s.check.margin()).fold(f64::INFINITY, f64::min);
    let all_hold = out.iter().all(|s| s.check.holds);
    Ok(SubdomainReport { reduced_inradius: rt, bound, samples: out, min_quotient, min_margin, all_hold })
}
