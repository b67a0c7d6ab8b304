use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

/// Neighborhood used for the grid cut metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StencilKind {
    #[serde(rename = "4")]
    Four,
    #[serde(rename = "8")]
    Eight,
    #[serde(rename = "16")]
    Sixteen,
}

impl StencilKind {
    pub fn neighbors(self) -> usize {
        match self {
            StencilKind::Four => 4,
            StencilKind::Eight => 8,
            StencilKind::Sixteen => 16,
        }
    }

    pub fn from_neighbors(n: usize) -> Option<Self> {
        match n {
            4 => Some(StencilKind::Four),
            8 => Some(StencilKind::Eight),
            16 => Some(StencilKind::Sixteen),
            _ => None,
        }
    }
}

/// Cell offset and the velocity credited to it per unit of arc flow.
pub type Footprint = ((i32, i32), (f64, f64));

/// Arc offsets with weights per unit cell size.
///
/// A straight cut with unit normal `n` and length `L` crosses arcs of total
/// capacity `L σ(n)` with `σ(n) = Σ_half w_k |o_k · n|`, the sum running
/// over one offset of each `±` pair.
///
/// Flows become cell velocities by spreading every arc over the monotone
/// lattice paths from its tail to its head, weighted uniformly, and
/// crediting each unit step to the two cells it joins. The 2×2 block
/// divergence of the resulting field then equals the mean net outflow of
/// the block's cells exactly. [`speed_bound`](Self::speed_bound) is the
/// largest speed such a field can reach under the arc capacities.
#[derive(Debug, Clone, PartialEq)]
pub struct CutMetricStencil {
    kind: StencilKind,
    /// One offset per `±` pair; the full stencil adds the negations.
    half: Vec<((i32, i32), f64)>,
    /// Per full offset: velocity credited to cells relative to the arc tail,
    /// per unit of arc flow and unit cell size.
    footprints: Vec<Vec<Footprint>>,
    speed: f64,
}

/// Velocity credited to cells by a unit flow along `o`.
fn footprint(o: (i32, i32)) -> Vec<Footprint> {
    let (dx, dy) = o;
    let sx = dx.signum();
    let sy = dy.signum();
    let n = (dx.abs() + dy.abs()) as usize;
    let ny = dy.unsigned_abs() as usize;
    // each path is a choice of which steps move in y
    let paths: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == ny).collect();
    let weight = 1.0 / paths.len() as f64;
    let mut acc: Vec<((i32, i32), (f64, f64))> = Vec::new();
    let mut add = |cell: (i32, i32), v: (f64, f64)| match acc.iter_mut().find(|(c, _)| *c == cell) {
        Some((_, a)) => {
            a.0 += v.0;
            a.1 += v.1;
        }
        None => acc.push((cell, v)),
    };
    for m in paths {
        let mut a = (0, 0);
        for step in 0..n {
            let e = if m >> step & 1 == 1 { (0, sy) } else { (sx, 0) };
            let b = (a.0 + e.0, a.1 + e.1);
            let v = (0.5 * weight * e.0 as f64, 0.5 * weight * e.1 as f64);
            add(a, v);
            add(b, v);
            a = b;
        }
    }
    acc
}

/// `max_{z ∈ Z} |z|` for the zonotope `Z = Σ [-g, g]`.
fn zonotope_radius(gens: &[(f64, f64)]) -> f64 {
    // the sign pattern of a vertex only changes across generator normals
    let mut cuts: Vec<f64> = gens
        .iter()
        .filter(|g| g.0 != 0.0 || g.1 != 0.0)
        .map(|g| (g.1.atan2(g.0) + std::f64::consts::FRAC_PI_2).rem_euclid(std::f64::consts::PI))
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    if cuts.is_empty() {
        return 0.0;
    }
    let mut best: f64 = 0.0;
    for i in 0..cuts.len() {
        let next = if i + 1 < cuts.len() { cuts[i + 1] } else { cuts[0] + std::f64::consts::PI };
        let (s, c) = (0.5 * (cuts[i] + next)).sin_cos();
        let (mut x, mut y) = (0.0, 0.0);
        for g in gens {
            let sign = if g.0 * c + g.1 * s >= 0.0 { 1.0 } else { -1.0 };
            x += sign * g.0;
            y += sign * g.1;
        }
        best = best.max(f64::hypot(x, y));
    }
    best
}

impl CutMetricStencil {
    pub fn new(kind: StencilKind) -> Self {
        let half = match kind {
            StencilKind::Four => vec![((1, 0), 1.0), ((0, 1), 1.0)],
            StencilKind::Eight => {
                // exact length along axes and diagonals
                let a = 2f64.sqrt() - 1.0;
                let d = 1.0 - FRAC_1_SQRT_2;
                vec![((1, 0), a), ((0, 1), a), ((1, 1), d), ((1, -1), d)]
            }
            StencilKind::Sixteen => {
                // Z is a 16-gon inscribed in the unit circle, with edge
                // half-angles balanced between the axis and knight-move
                // directions
                let x = 0.5 * 0.5f64.atan();
                let diag = std::f64::consts::FRAC_PI_4 - 2.0 * 0.5f64.atan() + x;
                let c_axis = x.sin();
                let c_knight = x.sin();
                let c_diag = diag.sin();
                let s2 = 2f64.sqrt();
                let s5 = 5f64.sqrt();
                vec![
                    ((1, 0), c_axis),
                    ((0, 1), c_axis),
                    ((1, 1), c_diag / s2),
                    ((1, -1), c_diag / s2),
                    ((2, 1), c_knight / s5),
                    ((1, 2), c_knight / s5),
                    ((2, -1), c_knight / s5),
                    ((1, -2), c_knight / s5),
                ]
            }
        };
        let mut full = half.clone();
        full.extend(half.iter().map(|&((di, dj), w)| ((-di, -dj), w)));
        let footprints: Vec<_> = full.iter().map(|&(o, _)| footprint(o)).collect();
        // net flow along each half offset ranges over [-w, w]
        let gens: Vec<(f64, f64)> = half
            .iter()
            .zip(&footprints)
            .flat_map(|(&(_, w), fp)| fp.iter().map(move |&(_, v)| (w * v.0, w * v.1)))
            .collect();
        let speed = zonotope_radius(&gens);
        CutMetricStencil { kind, half, footprints, speed }
    }

    pub fn four() -> Self {
        Self::new(StencilKind::Four)
    }

    pub fn eight() -> Self {
        Self::new(StencilKind::Eight)
    }

    pub fn sixteen() -> Self {
        Self::new(StencilKind::Sixteen)
    }

    pub fn kind(&self) -> StencilKind {
        self.kind
    }

    /// All offsets with weights: the half set followed by its negation.
    pub fn offsets(&self) -> Vec<((i32, i32), f64)> {
        let mut all = self.half.clone();
        all.extend(self.half.iter().map(|&((di, dj), w)| ((-di, -dj), w)));
        all
    }

    pub fn half_offsets(&self) -> &[((i32, i32), f64)] {
        &self.half
    }

    /// Cut capacity per unit length of a straight cut with normal angle
    /// `theta`.
    pub fn cut_density(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        self.half.iter().map(|&((di, dj), w)| w * (di as f64 * c + dj as f64 * s).abs()).sum()
    }

    /// Largest `|V|` of a reconstructed velocity over all flows within the
    /// arc capacities, in units of capacity per cell size.
    pub fn speed_bound(&self) -> f64 {
        self.speed
    }

    /// Velocity footprint of full offset `k` (indexing [`offsets`](Self::offsets)).
    pub fn footprint(&self, k: usize) -> &[Footprint] {
        &self.footprints[k]
    }

    /// `min_n σ(n) / speed_bound`: the worst-case ratio between certified
    /// and true boundary length. The minimum of a zonotope's support
    /// function is attained normal to one of its generators.
    pub fn isotropy(&self) -> f64 {
        let min = self
            .half
            .iter()
            .map(|&((di, dj), _)| self.cut_density((dj as f64).atan2(di as f64) + std::f64::consts::FRAC_PI_2))
            .fold(f64::INFINITY, f64::min);
        min / self.speed_bound()
    }
}
