//! Marching squares on the dual grid whose vertices are cell centers.
//!
//! Contours are oriented so that the region above the level lies on the
//! left: outer boundaries come out counterclockwise (positive area) and
//! holes clockwise. Saddle squares are resolved by the average of the four
//! corners; a tie counts as below, which keeps diagonal-only contacts of a
//! binary mask separate (4-connected foreground).

use std::collections::HashMap;

use super::grid::Grid;
use super::point::Point;
use super::polygon::signed_area;

#[derive(Debug, Clone, PartialEq)]
pub struct ContourLoop {
    pub points: Vec<Point>,
}

impl ContourLoop {
    pub fn length(&self) -> f64 {
        let n = self.points.len();
        (0..n).map(|i| self.points[i].dist(self.points[(i + 1) % n])).sum()
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.points)
    }
}

/// Edge of the dual grid: horizontal edges join centers `(i,j)-(i+1,j)`,
/// vertical edges join `(i,j)-(i,j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeKey {
    H(usize, usize),
    V(usize, usize),
}

/// Extracts all closed contours of `values` (row-major on `grid`) at `level`.
/// Values on the outermost ring must lie at or below `level` for every
/// contour to close; open chains are closed on return.
pub fn march(grid: &Grid, values: &[f64], level: f64) -> Vec<ContourLoop> {
    let (nx, ny) = (grid.nx, grid.ny);
    let v = |i: usize, j: usize| values[j * nx + i];
    let above = |i: usize, j: usize| v(i, j) > level;
    let cross = |a: (usize, usize), b: (usize, usize)| -> Point {
        let (va, vb) = (v(a.0, a.1), v(b.0, b.1));
        let t = if vb != va { ((level - va) / (vb - va)).clamp(0.0, 1.0) } else { 0.5 };
        let pa = grid.center(a.0, a.1);
        let pb = grid.center(b.0, b.1);
        pa + (pb - pa) * t
    };

    // segment start edge -> (end edge, start point)
    let mut next: HashMap<EdgeKey, EdgeKey> = HashMap::new();
    let mut point_of: HashMap<EdgeKey, Point> = HashMap::new();

    for j in 0..ny.saturating_sub(1) {
        for i in 0..nx.saturating_sub(1) {
            // corners counterclockwise: bl, br, tr, tl
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let up: [bool; 4] = corners.map(|(a, b)| above(a, b));
            if up.iter().all(|&u| u) || up.iter().all(|&u| !u) {
                continue;
            }
            let edges = [EdgeKey::H(i, j), EdgeKey::V(i + 1, j), EdgeKey::H(i, j + 1), EdgeKey::V(i, j)];
            // crossings in counterclockwise order; `true` marks above -> below
            let mut crossings: Vec<(usize, bool)> = Vec::with_capacity(4);
            for k in 0..4 {
                let (a, b) = (up[k], up[(k + 1) % 4]);
                if a != b {
                    crossings.push((k, a));
                    point_of
                        .entry(edges[k])
                        .or_insert_with(|| cross(corners[k], corners[(k + 1) % 4]));
                }
            }
            if crossings.len() == 2 {
                let (s, e) = if crossings[0].1 { (crossings[0].0, crossings[1].0) } else { (crossings[1].0, crossings[0].0) };
                next.insert(edges[s], edges[e]);
            } else {
                let center = corners.iter().map(|&(a, b)| v(a, b)).sum::<f64>() / 4.0;
                let joined = center > level;
                for (pos, &(k, a_to_b)) in crossings.iter().enumerate() {
                    if !a_to_b {
                        continue;
                    }
                    let partner = if joined { (pos + 1) % 4 } else { (pos + 3) % 4 };
                    next.insert(edges[k], edges[crossings[partner].0]);
                }
            }
        }
    }

    // Deterministic traversal order: sort the start keys.
    let mut starts: Vec<EdgeKey> = next.keys().copied().collect();
    starts.sort_by_key(|k| match *k {
        EdgeKey::H(i, j) => (j, i, 0),
        EdgeKey::V(i, j) => (j, i, 1),
    });
    let mut visited: std::collections::HashSet<EdgeKey> = std::collections::HashSet::new();
    let mut loops = Vec::new();
    for s in starts {
        if visited.contains(&s) {
            continue;
        }
        let mut pts = Vec::new();
        let mut cur = s;
        loop {
            if !visited.insert(cur) {
                break;
            }
            pts.push(point_of[&cur]);
            match next.get(&cur) {
                Some(&n) => cur = n,
                None => break,
            }
        }
        pts.dedup();
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        if pts.len() >= 3 {
            loops.push(ContourLoop { points: pts });
        }
    }
    loops
}

/// Ramer–Douglas–Peucker simplification of a closed loop with tolerance
/// `eps`. The loop is split at its first vertex and the vertex farthest
/// from it, and each half is simplified independently.
pub fn simplify_closed(points: &[Point], eps: f64) -> Vec<Point> {
    let n = points.len();
    if n <= 4 {
        return points.to_vec();
    }
    let far = (1..n)
        .max_by(|&a, &b| points[0].dist(points[a]).total_cmp(&points[0].dist(points[b])))
        .unwrap_or(n / 2);
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[far] = true;
    rdp(points, 0, far, eps, &mut keep);
    // second half wraps around to index 0
    let wrapped: Vec<Point> = points[far..].iter().chain(std::iter::once(&points[0])).copied().collect();
    let mut keep2 = vec![false; wrapped.len()];
    rdp(&wrapped, 0, wrapped.len() - 1, eps, &mut keep2);
    for (k, &kk) in keep2.iter().enumerate().take(wrapped.len() - 1) {
        if kk {
            keep[far + k] = true;
        }
    }
    points.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p).collect()
}

fn rdp(points: &[Point], first: usize, last: usize, eps: f64, keep: &mut [bool]) {
    let mut stack = vec![(first, last)];
    while let Some((a, b)) = stack.pop() {
        if b <= a + 1 {
            continue;
        }
        let (pa, pb) = (points[a], points[b]);
        let mut best = (0.0, a);
        for (k, &p) in points.iter().enumerate().take(b).skip(a + 1) {
            let d = p.dist_to_segment(pa, pb);
            if d > best.0 {
                best = (d, k);
            }
        }
        if best.0 > eps {
            keep[best.1] = true;
            stack.push((a, best.1));
            stack.push((best.1, b));
        }
    }
}
