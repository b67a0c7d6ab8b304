//! First Dirichlet eigenvalue of the five-point Laplacian on a grid domain.

use serde::{Deserialize, Serialize};

use crate::check::{slack, InequalityCheck, Relation, DEFAULT_REL_SLACK};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::GridDomain;

/// How a missing neighbor enters the five-point stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryRule {
    /// Zero is imposed on the shared cell face by an odd ghost value, which
    /// adds `1/Δ²` to the diagonal per missing neighbor.
    #[default]
    CellFace,
    /// The missing neighbor is dropped; zero sits at the exterior cell
    /// center.
    Omission,
}

const NONE: u32 = u32::MAX;
const NEIGHBORS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

pub const CG_TOLERANCE: f64 = 1e-10;
pub const CG_MAX_ITERATIONS: usize = 10_000;
pub const EIGEN_TOLERANCE: f64 = 1e-8;
pub const MAX_OUTER_ITERATIONS: usize = 5_000;

/// Matrix-free Dirichlet Laplacian over the interior cells, in compact
/// numbering.
#[derive(Debug, Clone)]
pub struct DirichletLaplacian {
    domain: GridDomain,
    rule: BoundaryRule,
    cells: Vec<usize>,
    diag: Vec<f64>,
    nbr: Vec<[u32; 4]>,
    off: f64,
}

impl DirichletLaplacian {
    pub fn assemble(g: &GridDomain) -> Self {
        Self::assemble_with(g, BoundaryRule::default())
    }

    pub fn assemble_with(g: &GridDomain, rule: BoundaryRule) -> Self {
        let cells: Vec<usize> = g.interior_cells().collect();
        let mut compact = vec![NONE; g.grid.len()];
        for (c, &idx) in cells.iter().enumerate() {
            compact[idx] = c as u32;
        }
        let inv = 1.0 / (g.cell() * g.cell());
        let mut diag = Vec::with_capacity(cells.len());
        let mut nbr = Vec::with_capacity(cells.len());
        for &idx in &cells {
            let mut row = [NONE; 4];
            let mut missing = 0;
            for (k, &(di, dj)) in NEIGHBORS.iter().enumerate() {
                match g.inside_neighbor(idx, di, dj) {
                    Some(q) => row[k] = compact[q],
                    None => missing += 1,
                }
            }
            let d = match rule {
                BoundaryRule::CellFace => 4.0 + missing as f64,
                BoundaryRule::Omission => 4.0,
            };
            diag.push(d * inv);
            nbr.push(row);
        }
        DirichletLaplacian { domain: g.clone(), rule, cells, diag, nbr, off: -inv }
    }

    pub fn dim(&self) -> usize {
        self.cells.len()
    }

    pub fn rule(&self) -> BoundaryRule {
        self.rule
    }

    pub fn domain(&self) -> &GridDomain {
        &self.domain
    }

    /// `y = A x` in compact numbering.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (c, yc) in y.iter_mut().enumerate() {
            let mut s = self.diag[c] * x[c];
            for &q in &self.nbr[c] {
                if q != NONE {
                    s += self.off * x[q as usize];
                }
            }
            *yc = s;
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut m = vec![vec![0.0; n]; n];
        for (c, row) in m.iter_mut().enumerate() {
            row[c] = self.diag[c];
            for &q in &self.nbr[c] {
                if q != NONE {
                    row[q as usize] = self.off;
                }
            }
        }
        m
    }

    pub fn compact(&self, u: &ScalarField) -> Vec<f64> {
        self.cells.iter().map(|&i| u.values[i]).collect()
    }

    pub fn expand(&self, x: &[f64]) -> ScalarField {
        let mut f = ScalarField::zeros(&self.domain);
        for (c, &idx) in self.cells.iter().enumerate() {
            f.values[idx] = x[c];
        }
        f
    }

    /// Conjugate gradients for `A x = b`, starting from `x`.
    pub fn solve(&self, b: &[f64], x: &mut [f64]) -> Result<usize> {
        let n = self.dim();
        let bnorm = norm(b);
        if bnorm == 0.0 {
            x.iter_mut().for_each(|v| *v = 0.0);
            return Ok(0);
        }
        let mut ax = vec![0.0; n];
        self.apply(x, &mut ax);
        let mut r: Vec<f64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
        let mut p = r.clone();
        let mut ap = vec![0.0; n];
        let mut rr = dot(&r, &r);
        let target = CG_TOLERANCE * bnorm;
        for it in 0..CG_MAX_ITERATIONS {
            if rr.sqrt() <= target {
                return Ok(it);
            }
            self.apply(&p, &mut ap);
            let alpha = rr / dot(&p, &ap);
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            let rr_new = dot(&r, &r);
            let beta = rr_new / rr;
            rr = rr_new;
            for i in 0..n {
                p[i] = r[i] + beta * p[i];
            }
        }
        if rr.sqrt() <= target {
            return Ok(CG_MAX_ITERATIONS);
        }
        Err(Error::Convergence { what: "conjugate gradient solve", iterations: CG_MAX_ITERATIONS, residual: rr.sqrt() / bnorm })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Debug, Clone)]
pub struct EigenResult {
    pub lambda: f64,
    /// Normalized to `Δ² Σ u² = 1` and positive.
    pub eigenfunction: ScalarField,
    /// `‖A u − λ u‖ / ‖u‖`.
    pub residual: f64,
    pub iterations: usize,
    pub inner_iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenSummary {
    pub lambda: f64,
    pub residual: f64,
    pub iterations: usize,
}

impl EigenResult {
    pub fn summary(&self) -> EigenSummary {
        EigenSummary { lambda: self.lambda, residual: self.residual, iterations: self.iterations }
    }
}

/// Inverse power iteration from the all-ones vector, with warm-started
/// conjugate-gradient inner solves. Stops once
/// `‖A u − λ u‖ <= 1e-8 · λ ‖u‖`.
pub fn smallest_eigenvalue(l: &DirichletLaplacian) -> Result<EigenResult> {
    let n = l.dim();
    let mut u = vec![1.0 / (n as f64).sqrt(); n];
    let mut w = u.clone();
    let mut au = vec![0.0; n];
    let mut lambda = rayleigh(l, &u, &mut au);
    let mut inner = 0;
    let mut residual = f64::INFINITY;
    for it in 1..=MAX_OUTER_ITERATIONS {
        for (wi, ui) in w.iter_mut().zip(&u) {
            *wi = ui / lambda;
        }
        inner += l.solve(&u, &mut w)?;
        let s = 1.0 / norm(&w);
        for (ui, wi) in u.iter_mut().zip(&w) {
            *ui = wi * s;
        }
        lambda = rayleigh(l, &u, &mut au);
        residual = au.iter().zip(&u).map(|(a, x)| (a - lambda * x).powi(2)).sum::<f64>().sqrt();
        if residual <= EIGEN_TOLERANCE * lambda {
            let sign = if u.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
            let h = l.domain.cell();
            let scale = sign / h;
            let eigenfunction = l.expand(&u.iter().map(|x| x * scale).collect::<Vec<_>>());
            return Ok(EigenResult { lambda, eigenfunction, residual, iterations: it, inner_iterations: inner });
        }
    }
    Err(Error::Convergence { what: "inverse power iteration", iterations: MAX_OUTER_ITERATIONS, residual })
}

fn rayleigh(l: &DirichletLaplacian, u: &[f64], au: &mut [f64]) -> f64 {
    l.apply(u, au);
    dot(u, au) / dot(u, u)
}

/// `⟨A u, u⟩ / ⟨u, u⟩`.
pub fn rayleigh_quotient(l: &DirichletLaplacian, u: &ScalarField) -> Result<f64> {
    if u.domain != l.domain {
        return Err(Error::DimensionMismatch("function is defined on a different grid domain".into()));
    }
    let x = l.compact(u);
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::Domain("Rayleigh quotient of the zero function".into()));
    }
    let mut ax = vec![0.0; x.len()];
    Ok(rayleigh(l, &x, &mut ax))
}

/// `λ >= h² / 4`.
pub fn check_cheeger_inequality(lambda: f64, h_lower: f64) -> InequalityCheck {
    let rhs = h_lower * h_lower / 4.0;
    InequalityCheck::new(lambda, Relation::GreaterEq, rhs, slack(rhs, DEFAULT_REL_SLACK, 0.0))
}

/// `λ >= 1 / (4 ρ̃²)`.
pub fn check_makai(lambda: f64, reduced_inradius: f64) -> InequalityCheck {
    let rhs = 1.0 / (4.0 * reduced_inradius * reduced_inradius);
    InequalityCheck::new(lambda, Relation::GreaterEq, rhs, slack(rhs, DEFAULT_REL_SLACK, 0.0))
}
