use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::geometry::{cut_set_to_polygons, GridDomain, Point, Polygon};
use crate::maxflow::{max_flow, max_flow_from, residual_reachable, sources_saturated, Flow};

use super::certificate::{certificate_stats, CertificateStats};
use super::network::{build_grid_network, flow_to_vector_field, GridNetwork};
use super::stencil::{CutMetricStencil, StencilKind};

pub const DEFAULT_TOL_H: f64 = 0.01;

/// Outcome of a single saturation test.
#[derive(Debug, Clone)]
pub struct FlowSolve {
    pub network: GridNetwork,
    pub flow: Flow<f64>,
    pub feasible: bool,
}

/// Solves the grid network at certified strength `h`, i.e. raw strength
/// `h · speed_bound`.
pub fn solve_at(g: &GridDomain, h: f64, stencil: &CutMetricStencil) -> Result<FlowSolve> {
    solve_from(g, h, stencil, None)
}

/// As [`solve_at`], warm-started from an earlier solve on the same domain
/// and stencil at a strength no larger than `h`.
pub fn solve_from(g: &GridDomain, h: f64, stencil: &CutMetricStencil, warm: Option<&FlowSolve>) -> Result<FlowSolve> {
    if !(h >= 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("h must be finite and nonnegative, got {h}")));
    }
    let network = build_grid_network(g, h * stencil.speed_bound(), stencil);
    let flow = match warm {
        Some(w) if w.network.strength <= network.strength && w.flow.arc_flow.len() == network.network.arcs().len() => {
            max_flow_from(&network.network, &w.flow)?
        }
        _ => max_flow(&network.network),
    };
    let feasible = sources_saturated(&network.network, &flow);
    Ok(FlowSolve { network, flow, feasible })
}

/// Whether a flow field with `|V| <= 1` and production `h` per unit area
/// exists on the grid.
pub fn feasible(g: &GridDomain, h: f64, stencil: &CutMetricStencil) -> Result<bool> {
    Ok(solve_at(g, h, stencil)?.feasible)
}

/// Source side of the residual cut, as a cell mask over the grid.
pub fn cut_cells(solve: &FlowSolve) -> Vec<bool> {
    let reach = residual_reachable(&solve.network.network, &solve.flow);
    let g = &solve.network.domain;
    let mut sel = vec![false; g.grid.len()];
    for (c, &idx) in solve.network.cells().iter().enumerate() {
        sel[idx] = reach[c];
    }
    sel
}

#[derive(Debug, Clone)]
pub struct CheegerResult {
    /// Largest strength at which all sources saturate.
    pub h_lower: f64,
    /// Quotient of `cheeger_set`.
    pub h_upper: f64,
    /// Polygonized min-cut components; the first has the smallest quotient.
    pub cheeger_set: Vec<Polygon>,
    /// Flow field at `h_lower`.
    pub certificate: VectorField,
    pub iterations: usize,
    pub stencil: StencilKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheegerSummary {
    pub h_lower: f64,
    pub h_upper: f64,
    pub resolution: usize,
    pub stencil: StencilKind,
    pub cheeger_set: Vec<Point>,
    pub certificate_stats: CertificateStats,
}

impl CheegerResult {
    pub fn summary(&self, resolution: usize) -> CheegerSummary {
        CheegerSummary {
            h_lower: self.h_lower,
            h_upper: self.h_upper,
            resolution,
            stencil: self.stencil,
            cheeger_set: self.cheeger_set.first().map(|p| p.vertices().to_vec()).unwrap_or_default(),
            certificate_stats: certificate_stats(&self.certificate),
        }
    }
}

/// Best single polygon of a cut set: lowest quotient component.
fn best_candidate(g: &GridDomain, sel: &[bool]) -> Result<Option<(f64, Vec<Polygon>)>> {
    let mut polys = cut_set_to_polygons(g, sel)?;
    if polys.is_empty() {
        return Ok(None);
    }
    polys.sort_by(|a, b| a.quotient().total_cmp(&b.quotient()));
    Ok(Some((polys[0].quotient(), polys)))
}

/// `cap(∂S) / (Δ² |S|)` of the residual cut's cell side, in certified
/// units. Every cut ratio bounds the discrete feasibility threshold from
/// above.
pub fn cut_ratio(solve: &FlowSolve) -> Option<f64> {
    let reach = residual_reachable(&solve.network.network, &solve.flow);
    let m = solve.network.cells().len();
    let count = reach[..m].iter().filter(|&&r| r).count();
    if count == 0 {
        return None;
    }
    let cap: f64 = solve.network.network.arcs()[m..]
        .iter()
        .filter(|a| reach[a.from] && !reach[a.to])
        .map(|a| a.cap)
        .sum();
    let h = solve.network.domain.cell();
    Some(cap / (h * h * count as f64) / solve.network.stencil.speed_bound())
}

/// Brackets the Cheeger constant by bisection on the flow strength.
///
/// The bracket starts at `[0, 4/ρ_grid]`. Each infeasible step also lowers
/// the upper end to the cut ratio of its min cut. Trials are placed below
/// the upper end at distances `tol_h/2, tol_h, 2 tol_h, ...`, never below
/// the midpoint, so the search halves the bracket once a feasible strength
/// is known.
pub fn cheeger_constant(g: &GridDomain, stencil: &CutMetricStencil, tol_h: f64) -> Result<CheegerResult> {
    if !(tol_h > 0.0) {
        return Err(Error::Domain(format!("tol_h must be positive, got {tol_h}")));
    }
    let rho = g.grid_inradius();
    let mut hi = 4.0 / rho;
    let mut iterations = 1;
    let mut top = solve_at(g, hi, stencil)?;
    if top.feasible {
        hi *= 2.0;
        iterations += 1;
        top = solve_from(g, hi, stencil, Some(&top))?;
        if top.feasible {
            return Err(Error::Bracket { h: hi });
        }
    }
    let mut best = best_candidate(g, &cut_cells(&top))?;
    hi = cut_ratio(&top).map_or(hi, |r| r.min(hi));
    let mut lo = 0.0;
    let mut lo_solve = solve_at(g, 0.0, stencil)?;
    let mut step = 0.5 * tol_h;
    while hi - lo > tol_h {
        let mid = (hi - step).max(0.5 * (lo + hi));
        let s = solve_from(g, mid, stencil, Some(&lo_solve))?;
        iterations += 1;
        if s.feasible {
            lo = mid;
            lo_solve = s;
        } else {
            hi = cut_ratio(&s).unwrap_or(mid).min(mid);
            step *= 2.0;
            if let Some(c) = best_candidate(g, &cut_cells(&s))? {
                if best.as_ref().is_none_or(|b| c.0 < b.0) {
                    best = Some(c);
                }
            }
        }
    }
    let (h_upper, cheeger_set) = best.ok_or_else(|| Error::Infeasible("no cut set found at any infeasible strength".into()))?;
    Ok(CheegerResult {
        h_lower: lo,
        h_upper,
        cheeger_set,
        certificate: flow_to_vector_field(&lo_solve.network, &lo_solve.flow),
        iterations,
        stencil: stencil.kind(),
    })
}
