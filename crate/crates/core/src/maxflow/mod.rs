//! Capacitated networks, maximum flows and minimum cuts.

mod dimacs;
mod dinic;

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dimacs::{parse_dimacs, write_dimacs};
pub use dinic::{max_flow, max_flow_from};

/// Arc capacity type. `i64` is exact; `f64` compares with a tolerance
/// relative to the largest capacity.
pub trait Capacity:
    Copy + PartialOrd + Debug + Display + Add<Output = Self> + Sub<Output = Self> + AddAssign + SubAssign + Send + Sync + 'static
{
    const ZERO: Self;
    /// Residuals at or below this are treated as saturated.
    fn eps(max_cap: Self) -> Self;
    fn is_valid(self) -> bool;
    fn to_f64(self) -> f64;
    fn min_of(a: Self, b: Self) -> Self {
        if b < a { b } else { a }
    }
    /// Whether a cut capacity certifies a flow value.
    fn cut_matches(value: Self, cut: Self) -> bool;
}

impl Capacity for i64 {
    const ZERO: Self = 0;
    fn eps(_: Self) -> Self {
        0
    }
    fn is_valid(self) -> bool {
        self >= 0
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
    fn cut_matches(value: Self, cut: Self) -> bool {
        value == cut
    }
}

impl Capacity for f64 {
    const ZERO: Self = 0.0;
    fn eps(max_cap: Self) -> Self {
        1e-12 * max_cap
    }
    fn is_valid(self) -> bool {
        self >= 0.0 && self.is_finite()
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn cut_matches(value: Self, cut: Self) -> bool {
        (value - cut).abs() <= 1e-9 * value.abs().max(cut.abs()).max(f64::MIN_POSITIVE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc<C> {
    pub from: usize,
    pub to: usize,
    pub cap: C,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network<C> {
    n: usize,
    s: usize,
    t: usize,
    arcs: Vec<Arc<C>>,
}

impl<C: Capacity> Network<C> {
    pub fn new(n: usize, s: usize, t: usize, arcs: Vec<Arc<C>>) -> Result<Self> {
        if s >= n || t >= n {
            return Err(Error::Domain(format!("source {s} or sink {t} out of range for {n} nodes")));
        }
        if s == t {
            return Err(Error::Domain(format!("source and sink are both node {s}")));
        }
        for (k, a) in arcs.iter().enumerate() {
            if a.from >= n || a.to >= n {
                return Err(Error::Domain(format!("arc {k} ({} -> {}) out of range", a.from, a.to)));
            }
            if !a.cap.is_valid() {
                return Err(Error::Domain(format!("arc {k} has invalid capacity {}", a.cap)));
            }
        }
        Ok(Network { n, s, t, arcs })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> usize {
        self.s
    }

    pub fn sink(&self) -> usize {
        self.t
    }

    pub fn arcs(&self) -> &[Arc<C>] {
        &self.arcs
    }

    pub(crate) fn max_cap(&self) -> C {
        self.arcs.iter().fold(C::ZERO, |m, a| if a.cap > m { a.cap } else { m })
    }
}

impl Network<f64> {
    /// The same network with integer capacities, if every capacity is an
    /// integer that fits in `i64`.
    pub fn to_integer(&self) -> Option<Network<i64>> {
        let arcs = self
            .arcs
            .iter()
            .map(|a| {
                (a.cap.fract() == 0.0 && a.cap < 9.0e15).then_some(Arc { from: a.from, to: a.to, cap: a.cap as i64 })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Network { n: self.n, s: self.s, t: self.t, arcs })
    }
}

/// Per-arc flow values and the net outflow of the source.
#[derive(Debug, Clone, PartialEq)]
pub struct Flow<C> {
    pub arc_flow: Vec<C>,
    pub value: C,
}

impl<C: Capacity> Flow<C> {
    pub fn zero(net: &Network<C>) -> Self {
        Flow { arc_flow: vec![C::ZERO; net.arcs.len()], value: C::ZERO }
    }
}

/// Source side of an s-t cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub source_side: Vec<bool>,
}

impl Cut {
    pub fn new<C: Capacity>(net: &Network<C>, source_side: Vec<bool>) -> Result<Self> {
        if source_side.len() != net.n {
            return Err(Error::DimensionMismatch(format!("cut has {} nodes, network has {}", source_side.len(), net.n)));
        }
        if !source_side[net.s] || source_side[net.t] {
            return Err(Error::Domain("cut must contain the source and not the sink".into()));
        }
        Ok(Cut { source_side })
    }

    pub fn from_nodes<C: Capacity>(net: &Network<C>, nodes: &[usize]) -> Result<Self> {
        let mut side = vec![false; net.n];
        for &v in nodes {
            *side.get_mut(v).ok_or_else(|| Error::Domain(format!("node {v} out of range")))? = true;
        }
        Cut::new(net, side)
    }

    pub fn nodes(&self) -> Vec<usize> {
        (0..self.source_side.len()).filter(|&v| self.source_side[v]).collect()
    }
}

/// `N_f(v)`: flow out of `v` minus flow into `v`.
pub fn excess<C: Capacity>(net: &Network<C>, f: &Flow<C>, v: usize) -> C {
    let mut out = C::ZERO;
    for (a, &x) in net.arcs.iter().zip(&f.arc_flow) {
        if a.from == a.to {
            continue;
        }
        if a.from == v {
            out += x;
        }
        if a.to == v {
            out -= x;
        }
    }
    out
}

/// Total capacity of arcs leaving the source side.
pub fn cut_capacity<C: Capacity>(net: &Network<C>, cut: &Cut) -> C {
    let mut cap = C::ZERO;
    for a in &net.arcs {
        if cut.source_side[a.from] && !cut.source_side[a.to] {
            cap += a.cap;
        }
    }
    cap
}

/// Capacity and conservation constraints, with the tolerance of `C`.
pub fn check_feasibility<C: Capacity>(net: &Network<C>, f: &Flow<C>) -> Result<()> {
    if f.arc_flow.len() != net.arcs.len() {
        return Err(Error::DimensionMismatch(format!("flow has {} arcs, network has {}", f.arc_flow.len(), net.arcs.len())));
    }
    let max = net.max_cap();
    // conservation sums up to `deg` terms, each carrying round-off
    let tol = C::eps(max) + C::eps(max) + C::eps(max) + C::eps(max);
    for (k, (a, &x)) in net.arcs.iter().zip(&f.arc_flow).enumerate() {
        if x < C::ZERO - tol || x > a.cap + tol {
            return Err(Error::Infeasible(format!("arc {k} ({} -> {}) carries {x}, capacity {}", a.from, a.to, a.cap)));
        }
    }
    let mut net_out = vec![C::ZERO; net.n];
    for (a, &x) in net.arcs.iter().zip(&f.arc_flow) {
        if a.from != a.to {
            net_out[a.from] += x;
            net_out[a.to] -= x;
        }
    }
    let mut scale = vec![C::ZERO; net.n];
    for a in &net.arcs {
        scale[a.from] += a.cap;
        scale[a.to] += a.cap;
    }
    for v in 0..net.n {
        if v == net.s || v == net.t {
            continue;
        }
        let slack = C::eps(scale[v]) + tol;
        if net_out[v] > slack || net_out[v] < C::ZERO - slack {
            return Err(Error::Infeasible(format!("node {v} violates conservation: net outflow {}", net_out[v])));
        }
    }
    Ok(())
}

/// `value(f) <= cap(S)` for a feasible flow.
pub fn verify_weak_duality<C: Capacity>(net: &Network<C>, f: &Flow<C>, cut: &Cut) -> Result<bool> {
    check_feasibility(net, f)?;
    Ok(f.value.to_f64() <= cut_capacity(net, cut).to_f64() + 1e-12)
}

/// Nodes reachable from the source in the residual graph of `f`. Errors
/// unless the cut they form certifies `f` as maximal.
pub fn min_cut<C: Capacity>(net: &Network<C>, f: &Flow<C>) -> Result<Cut> {
    check_feasibility(net, f)?;
    let side = residual_reachable(net, f);
    let value = f.value;
    if side[net.t] {
        return Err(Error::NotMaxFlow { value: value.to_f64(), cut_capacity: f64::INFINITY });
    }
    let cut = Cut { source_side: side };
    let cap = cut_capacity(net, &cut);
    if !C::cut_matches(value, cap) {
        return Err(Error::NotMaxFlow { value: value.to_f64(), cut_capacity: cap.to_f64() });
    }
    Ok(cut)
}

pub(crate) fn residual_reachable<C: Capacity>(net: &Network<C>, f: &Flow<C>) -> Vec<bool> {
    let eps = C::eps(net.max_cap());
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); net.n];
    for (k, a) in net.arcs.iter().enumerate() {
        if a.from != a.to {
            adj[a.from].push(k);
            adj[a.to].push(k);
        }
    }
    let mut seen = vec![false; net.n];
    seen[net.s] = true;
    let mut stack = vec![net.s];
    while let Some(u) = stack.pop() {
        for &k in &adj[u] {
            let a = net.arcs[k];
            let x = f.arc_flow[k];
            let next = if a.from == u && a.cap - x > eps {
                a.to
            } else if a.to == u && x > eps {
                a.from
            } else {
                continue;
            };
            if !seen[next] {
                seen[next] = true;
                stack.push(next);
            }
        }
    }
    seen
}

/// Super-source reduction of the equal-strength multi-source problem.
///
/// Base nodes are `0..weights.len()`, the super-source is `weights.len()`
/// and the sink is `weights.len() + 1`. Each base node `v` receives an
/// arc of capacity `h * weights[v]` from the source.
pub fn uniform_source_network(
    weights: &[f64],
    sink_arcs: &[(usize, f64)],
    internal: &[(usize, usize, f64)],
    h: f64,
) -> Result<Network<f64>> {
    if !(h >= 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("source strength must be a nonnegative number, got {h}")));
    }
    if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
        return Err(Error::Domain(format!("node weights must be positive, got {w}")));
    }
    let m = weights.len();
    let (s, t) = (m, m + 1);
    let mut arcs = Vec::with_capacity(m + sink_arcs.len() + internal.len());
    arcs.extend(weights.iter().enumerate().map(|(v, &w)| Arc { from: s, to: v, cap: h * w }));
    for &(u, v, c) in internal {
        if u >= m || v >= m {
            return Err(Error::Domain(format!("internal arc {u} -> {v} leaves the base set")));
        }
        arcs.push(Arc { from: u, to: v, cap: c });
    }
    for &(u, c) in sink_arcs {
        if u >= m {
            return Err(Error::Domain(format!("sink arc from {u} leaves the base set")));
        }
        arcs.push(Arc { from: u, to: t, cap: c });
    }
    Network::new(m + 2, s, t, arcs)
}

/// Whether a max flow saturates every source arc, within `1e-9` relative.
pub fn sources_saturated(net: &Network<f64>, f: &Flow<f64>) -> bool {
    let total: f64 = net.arcs.iter().filter(|a| a.from == net.s && a.to != net.s).map(|a| a.cap).sum();
    f.value >= total - 1e-9 * total
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(super) fn example() -> Network<i64> {
        // s=0, a=1, b=2, t=3
        let arcs = [(0, 1, 3), (0, 2, 2), (1, 3, 2), (2, 3, 3), (1, 2, 1)]
            .iter()
            .map(|&(from, to, cap)| Arc { from, to, cap })
            .collect();
        Network::new(4, 0, 3, arcs).unwrap()
    }

    #[test]
    fn example_network() {
        let net = example();
        let f = max_flow(&net);
        assert_eq!(f.value, 5);
        assert_eq!(excess(&net, &f, 1), 0);
        assert_eq!(excess(&net, &f, 2), 0);
        assert_eq!(excess(&net, &f, 0), 5);
        assert_eq!(excess(&net, &f, 3), -5);
        let cut = min_cut(&net, &f).unwrap();
        assert_eq!(cut.nodes(), vec![0]);
        assert_eq!(cut_capacity(&net, &cut), 5);
        for nodes in [&[0][..], &[0, 1], &[0, 1, 2]] {
            let c = Cut::from_nodes(&net, nodes).unwrap();
            assert_eq!(cut_capacity(&net, &c), 5, "{nodes:?}");
            assert!(verify_weak_duality(&net, &f, &c).unwrap());
        }
        let c = Cut::from_nodes(&net, &[0, 2]).unwrap();
        assert_eq!(cut_capacity(&net, &c), 6);
    }

    #[test]
    fn trivial_networks() {
        let single = Network::new(2, 0, 1, vec![Arc { from: 0, to: 1, cap: 7 }]).unwrap();
        let f = max_flow(&single);
        assert_eq!(f.value, 7);
        assert_eq!(min_cut(&single, &f).unwrap().nodes(), vec![0]);

        let apart = Network::new(4, 0, 3, vec![Arc { from: 0, to: 1, cap: 4 }, Arc { from: 2, to: 3, cap: 4 }]).unwrap();
        let f = max_flow(&apart);
        assert_eq!(f.value, 0);
        assert_eq!(min_cut(&apart, &f).unwrap().nodes(), vec![0, 1]);

        let parallel = Network::new(
            4,
            0,
            3,
            vec![
                Arc { from: 0, to: 1, cap: 1 },
                Arc { from: 1, to: 3, cap: 1 },
                Arc { from: 0, to: 2, cap: 2 },
                Arc { from: 2, to: 3, cap: 2 },
            ],
        )
        .unwrap();
        let f = max_flow(&parallel);
        let cut = min_cut(&parallel, &f).unwrap();
        assert_eq!(cut_capacity(&parallel, &cut), 3);
    }

    #[test]
    fn self_loops_and_arcs_into_source_are_ignored() {
        let net = Network::new(
            3,
            0,
            2,
            vec![
                Arc { from: 1, to: 1, cap: 9 },
                Arc { from: 0, to: 1, cap: 4 },
                Arc { from: 1, to: 0, cap: 5 },
                Arc { from: 1, to: 2, cap: 3 },
                Arc { from: 2, to: 1, cap: 8 },
            ],
        )
        .unwrap();
        let f = max_flow(&net);
        assert_eq!(f.value, 3);
        assert_eq!(f.arc_flow[0], 0);
        check_feasibility(&net, &f).unwrap();
        min_cut(&net, &f).unwrap();
    }

    #[test]
    fn invalid_networks_rejected() {
        assert!(Network::<i64>::new(2, 0, 0, vec![]).is_err());
        assert!(Network::<i64>::new(2, 0, 2, vec![]).is_err());
        assert!(Network::new(2, 0, 1, vec![Arc { from: 0, to: 1, cap: -1i64 }]).is_err());
        assert!(Network::new(2, 0, 1, vec![Arc { from: 0, to: 1, cap: f64::NAN }]).is_err());
        assert!(Network::new(2, 0, 1, vec![Arc { from: 0, to: 5, cap: 1.0 }]).is_err());
    }

    #[test]
    fn corrupted_and_submaximal_flows_detected() {
        let net = example();
        let mut f = max_flow(&net);
        f.arc_flow[2] += 1;
        let cut = Cut::from_nodes(&net, &[0]).unwrap();
        assert!(matches!(verify_weak_duality(&net, &f, &cut), Err(Error::Infeasible(_))));
        assert!(matches!(check_feasibility(&net, &f), Err(Error::Infeasible(_))));

        let zero = Flow::zero(&net);
        assert!(verify_weak_duality(&net, &zero, &cut).unwrap());
        assert!(matches!(min_cut(&net, &zero), Err(Error::NotMaxFlow { .. })));

        assert!(Cut::from_nodes(&net, &[1]).is_err());
        assert!(Cut::from_nodes(&net, &[0, 3]).is_err());
    }

    #[test]
    fn uniform_source_examples() {
        let net = uniform_source_network(&[1.0], &[(0, 2.0)], &[], 2.0).unwrap();
        let f = max_flow(&net);
        assert_eq!(f.value, 2.0);
        assert!(sources_saturated(&net, &f));

        let net = uniform_source_network(&[1.0], &[(0, 2.0)], &[], 2.5).unwrap();
        let f = max_flow(&net);
        assert_eq!(f.value, 2.0);
        assert!(!sources_saturated(&net, &f));

        let internal = [(0, 1, 1.0), (1, 0, 1.0), (1, 2, 1.0), (2, 1, 1.0)];
        let net = uniform_source_network(&[1.0; 3], &[(2, 1.0)], &internal, 1.0 / 3.0).unwrap();
        let f = max_flow(&net);
        assert!(sources_saturated(&net, &f));
        assert!((f.value - 1.0).abs() < 1e-12);
        let net = uniform_source_network(&[1.0; 3], &[(2, 1.0)], &internal, 0.34).unwrap();
        assert!(!sources_saturated(&net, &max_flow(&net)));

        assert!(uniform_source_network(&[1.0], &[], &[], -1.0).is_err());
        assert!(uniform_source_network(&[0.0], &[], &[], 1.0).is_err());
    }

    #[test]
    fn real_capacities_match_integer_path() {
        let net = example();
        let real = Network::new(4, 0, 3, net.arcs().iter().map(|a| Arc { from: a.from, to: a.to, cap: a.cap as f64 * 0.1 }).collect()).unwrap();
        let f = max_flow(&real);
        assert!((f.value - 0.5).abs() < 1e-12);
        let cut = min_cut(&real, &f).unwrap();
        assert!((cut_capacity(&real, &cut) - 0.5).abs() < 1e-12);
    }
}
