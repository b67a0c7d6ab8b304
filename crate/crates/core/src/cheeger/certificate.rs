use serde::{Deserialize, Serialize};

use crate::check::DEFAULT_REL_SLACK;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::geometry::GridDomain;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateStats {
    pub max_speed: f64,
    pub min_div: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub h_claimed: f64,
    pub max_speed: f64,
    pub min_div: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// Cell center where the divergence is smallest.
    pub worst_cell: Option<[f64; 2]>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Default certificate tolerance for a claimed strength.
pub fn default_tolerance(h: f64) -> f64 {
    DEFAULT_REL_SLACK * h.abs()
}

/// Divergence averaged over every 2×2 block of interior cells: the net
/// outflow through the block boundary of the cell-averaged field, divided
/// by the block area. Returns `(block center, value)` pairs; falls back to
/// per-cell divergence if the domain has no full block.
pub fn block_divergence(v: &VectorField) -> Vec<([f64; 2], f64)> {
    let d = &v.domain;
    let grid = d.grid;
    let h = d.cell();
    let mut out = Vec::new();
    for idx in d.interior_cells() {
        let (Some(b), Some(c), Some(e)) = (d.inside_neighbor(idx, 1, 0), d.inside_neighbor(idx, 0, 1), d.inside_neighbor(idx, 1, 1))
        else {
            continue;
        };
        let dx = (v.vx[b] + v.vx[e] - v.vx[idx] - v.vx[c]) / (2.0 * h);
        let dy = (v.vy[c] + v.vy[e] - v.vy[idx] - v.vy[b]) / (2.0 * h);
        let p = grid.center_of(idx);
        out.push(([p.x + 0.5 * h, p.y + 0.5 * h], dx + dy));
    }
    if out.is_empty() {
        let div = v.divergence();
        out = d.interior_cells().map(|i| {
            let p = grid.center_of(i);
            ([p.x, p.y], div[i])
        }).collect();
    }
    out
}

pub fn certificate_stats(v: &VectorField) -> CertificateStats {
    let min_div = block_divergence(v).iter().map(|b| b.1).fold(f64::INFINITY, f64::min);
    CertificateStats { max_speed: v.max_speed(), min_div }
}

/// Checks `|V| <= 1 + tol` and block divergence `>= h - tol`.
pub fn certify_lower_bound(v: &VectorField, g: &GridDomain, h_claimed: f64, tol: f64) -> Result<CertificateReport> {
    if v.domain != *g {
        return Err(Error::DimensionMismatch("vector field is defined on a different grid domain".into()));
    }
    if !(h_claimed.is_finite() && tol >= 0.0 && tol.is_finite()) {
        return Err(Error::Domain(format!("need finite h and tol >= 0, got h = {h_claimed}, tol = {tol}")));
    }
    let blocks = block_divergence(v);
    let worst = blocks.iter().min_by(|a, b| a.1.total_cmp(&b.1)).copied();
    let max_speed = v.max_speed();
    let min_div = worst.map_or(f64::INFINITY, |w| w.1);
    let ok = max_speed <= 1.0 + tol && min_div >= h_claimed - tol && max_speed.is_finite();
    Ok(CertificateReport {
        h_claimed,
        max_speed,
        min_div,
        tolerance: tol,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        worst_cell: worst.map(|w| w.0),
    })
}
