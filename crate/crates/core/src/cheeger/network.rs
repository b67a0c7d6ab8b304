use crate::field::VectorField;
use crate::geometry::GridDomain;
use crate::maxflow::{Arc, Flow, Network};

use super::stencil::CutMetricStencil;

/// Flow network of a grid domain. Node `c < cells.len()` is the interior
/// cell `cells[c]`; the super-source and sink follow. Arc `c` is the
/// source arc of cell `c`; arc `m + c·K + k` leaves cell `c` along offset
/// `k` of the full stencil, to a neighbor cell or to the sink.
#[derive(Debug, Clone)]
pub struct GridNetwork {
    pub network: Network<f64>,
    pub domain: GridDomain,
    pub stencil: CutMetricStencil,
    /// Raw per-cell production, in capacity per unit area.
    pub strength: f64,
    cells: Vec<usize>,
    node_of: Vec<usize>,
}

impl GridNetwork {
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// Node of a grid cell, if interior.
    pub fn node(&self, idx: usize) -> Option<usize> {
        let n = self.node_of[idx];
        (n != usize::MAX).then_some(n)
    }

    pub fn source(&self) -> usize {
        self.cells.len()
    }

    pub fn sink(&self) -> usize {
        self.cells.len() + 1
    }

    fn arc(&self, cell: usize, k: usize) -> usize {
        self.cells.len() + cell * self.stencil.kind().neighbors() + k
    }

    /// Total source capacity, `strength · Δ² · #cells`.
    pub fn total_source(&self) -> f64 {
        self.network.arcs()[..self.cells.len()].iter().map(|a| a.cap).sum()
    }

    pub fn total_sink(&self) -> f64 {
        let t = self.sink();
        self.network.arcs().iter().filter(|a| a.to == t).map(|a| a.cap).sum()
    }
}

/// Builds the network with uniform raw production `strength` per unit area.
/// Arc capacities are `w · Δ`; certified values are obtained by dividing by
/// [`CutMetricStencil::speed_bound`].
pub fn build_grid_network(g: &GridDomain, strength: f64, stencil: &CutMetricStencil) -> GridNetwork {
    let cells: Vec<usize> = g.interior_cells().collect();
    let m = cells.len();
    let mut node_of = vec![usize::MAX; g.grid.len()];
    for (c, &idx) in cells.iter().enumerate() {
        node_of[idx] = c;
    }
    let (s, t) = (m, m + 1);
    let h = g.cell();
    let offsets = stencil.offsets();
    let mut arcs = Vec::with_capacity(m * (offsets.len() + 1));
    arcs.extend((0..m).map(|c| Arc { from: s, to: c, cap: strength * h * h }));
    for (c, &idx) in cells.iter().enumerate() {
        for &((di, dj), w) in &offsets {
            let to = g.inside_neighbor(idx, di, dj).map_or(t, |q| node_of[q]);
            arcs.push(Arc { from: c, to, cap: w * h });
        }
    }
    let network = Network::new(m + 2, s, t, arcs).expect("grid network is valid by construction");
    GridNetwork { network, domain: g.clone(), stencil: stencil.clone(), strength, cells, node_of }
}

/// Cell velocities from a flow, scaled so that `|V| <= 1`. Each arc flow
/// is spread along its lattice paths (see [`CutMetricStencil`]), so the 2×2
/// block divergence of the field is the block's mean production.
pub fn flow_to_vector_field(gn: &GridNetwork, f: &Flow<f64>) -> VectorField {
    let g = &gn.domain;
    let mut v = VectorField::zeros(g);
    let k_full = gn.stencil.kind().neighbors();
    let x = &f.arc_flow;
    for (c, &idx) in gn.cells.iter().enumerate() {
        for k in 0..k_full {
            let flow = x[gn.arc(c, k)];
            if flow == 0.0 {
                continue;
            }
            for &((di, dj), (ux, uy)) in gn.stencil.footprint(k) {
                if let Some(q) = g.inside_neighbor(idx, di, dj) {
                    v.vx[q] += ux * flow;
                    v.vy[q] += uy * flow;
                }
            }
        }
    }
    v.scale(1.0 / (g.cell() * gn.stencil.speed_bound()));
    v
}
