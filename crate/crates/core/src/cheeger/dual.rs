use serde::{Deserialize, Serialize};

use crate::check::{slack, InequalityCheck, Relation, DEFAULT_REL_SLACK};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::{cut_set_to_polygons, polygonize_cells, quotient_of_set, GridDomain, PolygonizeOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualQuotient {
    /// Total variation over `L¹` norm.
    pub q_value: f64,
    pub total_variation: f64,
    /// Threshold `t` whose superlevel set `{φ > t}` has the least quotient.
    pub best_threshold: f64,
    pub best_quotient: f64,
    /// `best_quotient <= q_value`, up to discretization slack.
    pub sweep_check: InequalityCheck,
}

/// `Q(φ) = TV(φ) / ∫φ` with the total variation computed level by level
/// from contour lengths, and the smallest quotient over superlevel sets.
pub fn quotient_of_candidate(phi: &ScalarField, g: &GridDomain, n_levels: usize) -> Result<DualQuotient> {
    if phi.domain != *g {
        return Err(Error::DimensionMismatch("candidate is defined on a different grid domain".into()));
    }
    if n_levels == 0 {
        return Err(Error::Domain("need at least one level".into()));
    }
    if let Some(i) = g.interior_cells().find(|&i| !(phi.values[i] >= 0.0 && phi.values[i].is_finite())) {
        return Err(Error::Domain(format!("candidate must be finite and nonnegative, cell {i} holds {}", phi.values[i])));
    }
    let top = phi.max();
    if !(top > 0.0) {
        return Err(Error::Domain("candidate vanishes identically".into()));
    }
    let l1 = phi.integral();
    let dt = top / n_levels as f64;
    let superlevel = |t: f64| -> Vec<bool> { (0..g.grid.len()).map(|i| g.contains(i) && phi.values[i] > t).collect() };

    let mut tv = 0.0;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..n_levels {
        let mid = superlevel((i as f64 + 0.5) * dt);
        let len: f64 = polygonize_cells(g, &mid, PolygonizeOptions { fill_holes: false, ..Default::default() })
            .iter()
            .map(|l| l.length())
            .sum();
        tv += len * dt;

        let t = i as f64 * dt;
        if let Some(q) = quotient_of_set(&cut_set_to_polygons(g, &superlevel(t))?) {
            if q < best.0 {
                best = (q, t);
            }
        }
    }
    let q_value = tv / l1;
    let sweep_check =
        InequalityCheck::new(best.0, Relation::LessEq, q_value, slack(q_value, DEFAULT_REL_SLACK, 0.0));
    Ok(DualQuotient { q_value, total_variation: tv, best_threshold: best.1, best_quotient: best.0, sweep_check })
}
