//! Cell-centered scalar and vector fields over a rasterized domain.

use crate::geometry::{Grid, GridDomain};

/// Real values on the interior cells of a domain; exterior cells hold 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub domain: GridDomain,
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(domain: &GridDomain) -> Self {
        ScalarField { domain: domain.clone(), values: vec![0.0; domain.grid.len()] }
    }

    /// Evaluates `f` at every interior cell center.
    pub fn from_fn(domain: &GridDomain, mut f: impl FnMut(crate::Point) -> f64) -> Self {
        let mut s = ScalarField::zeros(domain);
        for idx in domain.interior_cells() {
            s.values[idx] = f(domain.grid.center_of(idx));
        }
        s
    }

    pub fn grid(&self) -> &Grid {
        &self.domain.grid
    }

    pub fn max(&self) -> f64 {
        self.domain.interior_cells().map(|i| self.values[i]).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.domain.interior_cells().map(|i| self.values[i]).fold(f64::INFINITY, f64::min)
    }

    /// `Δ² Σ values`.
    pub fn integral(&self) -> f64 {
        let c = self.domain.cell();
        self.domain.interior_cells().map(|i| self.values[i]).sum::<f64>() * c * c
    }

    /// Centered difference along `(di, dj)`, one-sided where a neighbor is
    /// outside the domain, zero for an isolated cell.
    pub fn partial(&self, idx: usize, di: i32, dj: i32) -> f64 {
        directional_difference(&self.domain, &self.values, idx, di, dj)
    }
}

pub(crate) fn directional_difference(d: &GridDomain, v: &[f64], idx: usize, di: i32, dj: i32) -> f64 {
    let h = d.cell();
    match (d.inside_neighbor(idx, di, dj), d.inside_neighbor(idx, -di, -dj)) {
        (Some(f), Some(b)) => (v[f] - v[b]) / (2.0 * h),
        (Some(f), None) => (v[f] - v[idx]) / h,
        (None, Some(b)) => (v[idx] - v[b]) / h,
        (None, None) => 0.0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub domain: GridDomain,
    pub vx: Vec<f64>,
    pub vy: Vec<f64>,
}

impl VectorField {
    pub fn zeros(domain: &GridDomain) -> Self {
        let n = domain.grid.len();
        VectorField { domain: domain.clone(), vx: vec![0.0; n], vy: vec![0.0; n] }
    }

    pub fn from_fn(domain: &GridDomain, mut f: impl FnMut(crate::Point) -> crate::Point) -> Self {
        let mut v = VectorField::zeros(domain);
        for idx in domain.interior_cells() {
            let p = f(domain.grid.center_of(idx));
            v.vx[idx] = p.x;
            v.vy[idx] = p.y;
        }
        v
    }

    pub fn at(&self, idx: usize) -> crate::Point {
        crate::Point::new(self.vx[idx], self.vy[idx])
    }

    pub fn max_speed(&self) -> f64 {
        self.domain.interior_cells().map(|i| self.vx[i].hypot(self.vy[i])).fold(0.0, f64::max)
    }

    /// Discrete divergence per cell: centered differences, one-sided at
    /// cells missing a neighbor. Exterior cells hold 0.
    pub fn divergence(&self) -> Vec<f64> {
        let d = &self.domain;
        let mut out = vec![0.0; d.grid.len()];
        for idx in d.interior_cells() {
            out[idx] = directional_difference(d, &self.vx, idx, 1, 0) + directional_difference(d, &self.vy, idx, 0, 1);
        }
        out
    }

    pub fn scale(&mut self, s: f64) {
        self.vx.iter_mut().for_each(|x| *x *= s);
        self.vy.iter_mut().for_each(|y| *y *= s);
    }
}
