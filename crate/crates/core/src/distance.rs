//! Distance-to-boundary fields and the inradius bounds built on them.
//!
//! For a simply connected planar domain `S` with inradius `ρ`, the field
//! `V = -(1 - φ/ρ)∇φ` (φ = distance to `∂S`) has `|V| <= 1` and
//! `∫ div V = |∂S| >= |S|/ρ + πρ = |S|/ρ̃`. Its divergence is not bounded
//! below pointwise once the medial axis carries a singular Laplacian, so
//! it certifies the inradius bound only in integrated form.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::check::{slack, InequalityCheck, Relation, DEFAULT_REL_SLACK};
use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::geometry::{cut_set_to_polygons, grid_area, march, polygonize_cells, GridDomain, Point, Polygon, PolygonizeOptions};

/// Default number of levels for level-set quadratures.
pub const DEFAULT_LEVELS: usize = 64;

/// Exact Euclidean distance from every interior cell center to the polygon
/// boundary.
pub fn distance_to_boundary(p: &Polygon, g: &GridDomain) -> ScalarField {
    let edges: Vec<(Point, Point)> = p.edges().collect();
    let mut phi = ScalarField::zeros(g);
    for idx in g.interior_cells() {
        let c = g.grid.center_of(idx);
        phi.values[idx] = edges.iter().map(|&(a, b)| c.dist_to_segment(a, b)).fold(f64::INFINITY, f64::min);
    }
    phi
}

/// Maximum of a distance field over interior cells.
pub fn inradius(phi: &ScalarField) -> f64 {
    phi.max().max(0.0)
}

/// `ρ / (1 + πρ²/|Ω|)`.
pub fn reduced_inradius(rho: f64, area: f64) -> Result<f64> {
    if !(rho > 0.0 && area > 0.0) || !rho.is_finite() || !area.is_finite() {
        return Err(Error::Domain(format!("reduced inradius needs ρ > 0 and area > 0, got ρ = {rho}, area = {area}")));
    }
    Ok(rho / (1.0 + PI * rho * rho / area))
}

/// Gradient of a scalar field by centered differences with one-sided
/// fallback.
pub fn gradient(phi: &ScalarField) -> VectorField {
    let mut v = VectorField::zeros(&phi.domain);
    for idx in phi.domain.interior_cells() {
        v.vx[idx] = phi.partial(idx, 1, 0);
        v.vy[idx] = phi.partial(idx, 0, 1);
    }
    v
}

/// `V = -(1 - φ/ρ) ∇φ`.
pub fn makai_field(phi: &ScalarField, rho: f64) -> Result<VectorField> {
    if !(rho > 0.0) {
        return Err(Error::Domain(format!("makai field needs ρ > 0, got {rho}")));
    }
    let mut v = gradient(phi);
    for idx in phi.domain.interior_cells() {
        let s = -(1.0 - phi.values[idx] / rho);
        v.vx[idx] *= s;
        v.vy[idx] *= s;
    }
    Ok(v)
}

/// Fraction of interior cells, at least `margin` from the boundary and off
/// the medial axis, where `| |∇φ| - 1 | <= 0.05`. Medial-axis cells are
/// those whose forward and backward one-sided gradients differ by more
/// than 0.5.
pub fn unit_gradient_fraction(phi: &ScalarField, margin: f64) -> f64 {
    let d = &phi.domain;
    let h = d.cell();
    let v = &phi.values;
    let (mut good, mut total) = (0usize, 0usize);
    for idx in d.interior_cells() {
        if v[idx] < margin {
            continue;
        }
        let one_sided = |di: i32, dj: i32| -> Option<(f64, f64)> {
            let f = d.inside_neighbor(idx, di, dj)?;
            let b = d.inside_neighbor(idx, -di, -dj)?;
            Some(((v[f] - v[idx]) / h, (v[idx] - v[b]) / h))
        };
        let (Some((fx, bx)), Some((fy, by))) = (one_sided(1, 0), one_sided(0, 1)) else { continue };
        if (Point::new(fx, fy) - Point::new(bx, by)).norm() > 0.5 {
            continue;
        }
        total += 1;
        let gnorm = Point::new(0.5 * (fx + bx), 0.5 * (fy + by)).norm();
        if (gnorm - 1.0).abs() <= 0.05 {
            good += 1;
        }
    }
    if total == 0 {
        return 1.0;
    }
    good as f64 / total as f64
}

/// The two discrete versions of `∫_S div V`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivergenceIntegral {
    /// `Δ² Σ div V` over interior cells.
    pub interior_sum: f64,
    /// Outward flux through the marching-squares boundary of the mask.
    pub boundary_flux: f64,
}

pub fn divergence_integral(v: &VectorField, g: &GridDomain) -> DivergenceIntegral {
    let h = g.cell();
    let div = v.divergence();
    let interior_sum = g.interior_cells().map(|i| div[i]).sum::<f64>() * h * h;

    let loops = polygonize_cells(g, g.mask(), PolygonizeOptions { fill_holes: false, simplify_cells: None });
    let mut flux = 0.0;
    for l in &loops {
        let n = l.points.len();
        for k in 0..n {
            let (a, b) = (l.points[k], l.points[(k + 1) % n]);
            let d = b - a;
            let normal = Point::new(d.y, -d.x);
            let m = (a + b) * 0.5;
            if let Some(idx) = nearest_interior(g, m) {
                flux += v.at(idx).dot(normal);
            }
        }
    }
    DivergenceIntegral { interior_sum, boundary_flux: flux }
}

fn nearest_interior(g: &GridDomain, p: Point) -> Option<usize> {
    let base = g.grid.locate(p)?;
    let mut best: Option<(f64, usize)> = None;
    for dj in -1..=1 {
        for di in -1..=1 {
            if let Some(q) = g.inside_neighbor(base, di, dj) {
                let d = g.grid.center_of(q).dist(p);
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, q));
                }
            }
        }
    }
    best.map(|(_, q)| q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelSetCurve {
    pub level: f64,
    pub length: f64,
    pub components: usize,
    /// Set when the level lies outside `(0, max φ)` and was not traced.
    pub skipped: bool,
}

/// Marching-squares length of `{φ = t}` for each requested level.
pub fn level_set_lengths(phi: &ScalarField, levels: &[f64]) -> Vec<LevelSetCurve> {
    let top = phi.max();
    levels
        .iter()
        .map(|&t| {
            if !(t > 0.0 && t < top) {
                return LevelSetCurve { level: t, length: 0.0, components: 0, skipped: true };
            }
            let loops = march(phi.grid(), &phi.values, t);
            LevelSetCurve {
                level: t,
                length: loops.iter().map(|l| l.length()).sum(),
                components: loops.len(),
                skipped: false,
            }
        })
        .collect()
}

fn midpoint_levels(top: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| (i as f64 + 0.5) * top / n as f64).collect()
}

/// Midpoint-rule value of `∫_0^top L_t dt`.
pub fn level_length_integral(phi: &ScalarField, top: f64, n_levels: usize) -> f64 {
    let dt = top / n_levels as f64;
    level_set_lengths(phi, &midpoint_levels(top, n_levels)).iter().map(|c| c.length).sum::<f64>() * dt
}

/// Relative defect `|∫_0^max L_t dt - |Ω|_grid| / |Ω|_grid` of the coarea
/// identity for a distance field.
pub fn coarea_check(phi: &ScalarField, g: &GridDomain, n_levels: usize) -> Result<f64> {
    if n_levels < 16 {
        return Err(Error::Domain(format!("coarea check needs at least 16 levels, got {n_levels}")));
    }
    let area = grid_area(g);
    let integral = level_length_integral(phi, phi.max(), n_levels);
    Ok((integral - area).abs() / area)
}

/// `ρ|∂S| >= |S| + πρ²` on an exact polygon. The inradius is computed from
/// the polygon itself, so only a round-off slack is allowed.
pub fn bonnesen_check(p: &Polygon) -> InequalityCheck {
    let rho = p.inradius();
    let lhs = rho * p.perimeter();
    let rhs = p.area() + PI * rho * rho;
    InequalityCheck::new(lhs, Relation::GreaterEq, rhs, 1e-9 * rhs.abs())
}

/// Level-set form of `∫_S (1 - φ/ρ) Δφ <= -πρ`:
/// the left side equals `(1/ρ) ∫_0^ρ (L_t - L_0) dt` with `L_0 = |∂S|`.
pub fn finalest_check(phi: &ScalarField, g: &GridDomain, rho: f64) -> Result<InequalityCheck> {
    finalest_check_with(phi, g, rho, DEFAULT_LEVELS)
}

pub fn finalest_check_with(phi: &ScalarField, g: &GridDomain, rho: f64, n_levels: usize) -> Result<InequalityCheck> {
    if !(rho > 0.0) {
        return Err(Error::Domain(format!("finalest check needs ρ > 0, got {rho}")));
    }
    let l0: f64 = cut_set_to_polygons(g, g.mask())?.iter().map(Polygon::perimeter).sum();
    let integral = level_length_integral(phi, rho, n_levels);
    let value = (integral - rho * l0) / rho;
    let bound = -PI * rho;
    Ok(InequalityCheck::new(value, Relation::LessEq, bound, slack(bound, DEFAULT_REL_SLACK, 0.0)))
}
