use std::collections::VecDeque;

use super::{Capacity, Flow, Network};
use crate::error::Result;

/// Residual graph with paired edges: `2k` is arc `k`, `2k + 1` its reverse.
struct Residual<C> {
    head: Vec<usize>,
    res: Vec<C>,
    /// CSR offsets into `adj`.
    start: Vec<usize>,
    adj: Vec<usize>,
}

impl<C: Capacity> Residual<C> {
    fn new(net: &Network<C>) -> Self {
        let m = net.arcs.len();
        let mut head = vec![0; 2 * m];
        let mut res = vec![C::ZERO; 2 * m];
        let mut deg = vec![0usize; net.n + 1];
        for (k, a) in net.arcs.iter().enumerate() {
            head[2 * k] = a.to;
            head[2 * k + 1] = a.from;
            if a.from != a.to {
                res[2 * k] = a.cap;
                deg[a.from] += 1;
                deg[a.to] += 1;
            }
        }
        let mut start = vec![0; net.n + 1];
        for v in 0..net.n {
            start[v + 1] = start[v] + deg[v];
        }
        let mut fill = start.clone();
        let mut adj = vec![0; start[net.n]];
        for (k, a) in net.arcs.iter().enumerate() {
            if a.from != a.to {
                adj[fill[a.from]] = 2 * k;
                fill[a.from] += 1;
                adj[fill[a.to]] = 2 * k + 1;
                fill[a.to] += 1;
            }
        }
        Residual { head, res, start, adj }
    }
}

/// Dinic's algorithm: BFS level graph, then blocking flow by iterative
/// depth-first search with current-arc pointers.
pub fn max_flow<C: Capacity>(net: &Network<C>) -> Flow<C> {
    augment(net, Residual::new(net))
}

/// Max flow starting from `initial`, which must be feasible for `net`
/// (as checked by [`check_feasibility`](super::check_feasibility)).
pub fn max_flow_from<C: Capacity>(net: &Network<C>, initial: &Flow<C>) -> Result<Flow<C>> {
    super::check_feasibility(net, initial)?;
    let mut r = Residual::new(net);
    for (k, (a, &x)) in net.arcs.iter().zip(&initial.arc_flow).enumerate() {
        if a.from == a.to {
            continue;
        }
        let x = if x > a.cap { a.cap } else if x < C::ZERO { C::ZERO } else { x };
        r.res[2 * k] = a.cap - x;
        r.res[2 * k + 1] = x;
    }
    Ok(augment(net, r))
}

fn augment<C: Capacity>(net: &Network<C>, mut r: Residual<C>) -> Flow<C> {
    let eps = C::eps(net.max_cap());
    let (s, t, n) = (net.s, net.t, net.n);
    let mut level = vec![usize::MAX; n];
    let mut cur = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut path: Vec<usize> = Vec::new();

    loop {
        level.iter_mut().for_each(|l| *l = usize::MAX);
        level[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &e in &r.adj[r.start[u]..r.start[u + 1]] {
                let v = r.head[e];
                if level[v] == usize::MAX && r.res[e] > eps {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if level[t] == usize::MAX {
            break;
        }
        cur.copy_from_slice(&r.start[..n]);
        path.clear();
        let mut u = s;
        loop {
            if u == t {
                let mut b = r.res[path[0]];
                for &e in &path[1..] {
                    b = C::min_of(b, r.res[e]);
                }
                let mut cut_at = path.len();
                for (i, &e) in path.iter().enumerate() {
                    r.res[e] -= b;
                    r.res[e ^ 1] += b;
                    if cut_at == path.len() && r.res[e] <= eps {
                        cut_at = i;
                    }
                }
                path.truncate(cut_at);
                u = match path.last() {
                    Some(&e) => r.head[e],
                    None => s,
                };
                continue;
            }
            let end = r.start[u + 1];
            let mut advanced = false;
            while cur[u] < end {
                let e = r.adj[cur[u]];
                let v = r.head[e];
                if r.res[e] > eps && level[v] == level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                cur[u] += 1;
            }
            if advanced {
                continue;
            }
            // dead end: retire u and retreat
            level[u] = usize::MAX;
            match path.pop() {
                Some(e) => {
                    u = r.head[e ^ 1];
                    cur[u] += 1;
                }
                None => break,
            }
        }
    }

    let arc_flow = net
        .arcs
        .iter()
        .enumerate()
        .map(|(k, a)| {
            if a.from == a.to {
                return C::ZERO;
            }
            let x = r.res[2 * k + 1];
            if x < C::ZERO {
                C::ZERO
            } else if x > a.cap {
                a.cap
            } else {
                x
            }
        })
        .collect();
    let mut flow = Flow { arc_flow, value: C::ZERO };
    flow.value = super::excess(net, &flow, s);
    flow
}
