//! Cell sets on a grid: hole filling, connected components, and
//! conversion to measurable polygons.

use std::collections::VecDeque;

use super::contour::{march, simplify_closed, ContourLoop};
use super::grid::GridDomain;
use super::polygon::Polygon;
use crate::error::{Error, Result};

/// Default Douglas–Peucker tolerance for cut-set contours, in cells.
/// Binary marching squares only produces 8 edge directions; straightening
/// the staircase removes the resulting length bias on oblique boundaries.
pub const DEFAULT_SIMPLIFY_CELLS: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolygonizeOptions {
    pub fill_holes: bool,
    /// Douglas–Peucker tolerance in cells; `None` keeps the raw contour.
    pub simplify_cells: Option<f64>,
}

impl Default for PolygonizeOptions {
    fn default() -> Self {
        PolygonizeOptions { fill_holes: true, simplify_cells: Some(DEFAULT_SIMPLIFY_CELLS) }
    }
}

/// Adds every unselected cell not 8-connected to the grid border.
pub fn fill_holes(nx: usize, ny: usize, selected: &[bool]) -> Vec<bool> {
    let mut outside = vec![false; nx * ny];
    let mut queue = VecDeque::new();
    let seed = |idx: usize, outside: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
        if !selected[idx] && !outside[idx] {
            outside[idx] = true;
            queue.push_back(idx);
        }
    };
    for i in 0..nx {
        seed(i, &mut outside, &mut queue);
        seed((ny - 1) * nx + i, &mut outside, &mut queue);
    }
    for j in 0..ny {
        seed(j * nx, &mut outside, &mut queue);
        seed(j * nx + nx - 1, &mut outside, &mut queue);
    }
    while let Some(idx) = queue.pop_front() {
        let (i, j) = ((idx % nx) as i64, (idx / nx) as i64);
        for dj in -1..=1 {
            for di in -1..=1 {
                let (a, b) = (i + di, j + dj);
                if a < 0 || b < 0 || a >= nx as i64 || b >= ny as i64 {
                    continue;
                }
                let q = b as usize * nx + a as usize;
                if !selected[q] && !outside[q] {
                    outside[q] = true;
                    queue.push_back(q);
                }
            }
        }
    }
    outside.into_iter().map(|o| !o).collect()
}

/// 4-connected components of `selected`, each as a sorted list of indices.
pub fn components4(nx: usize, ny: usize, selected: &[bool]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; nx * ny];
    let mut comps = Vec::new();
    for start in 0..nx * ny {
        if !selected[start] || label[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut cells = vec![start];
        label[start] = id;
        let mut k = 0;
        while k < cells.len() {
            let idx = cells[k];
            k += 1;
            let (i, j) = (idx % nx, idx / nx);
            let mut nb = [None; 4];
            if i > 0 {
                nb[0] = Some(idx - 1);
            }
            if i + 1 < nx {
                nb[1] = Some(idx + 1);
            }
            if j > 0 {
                nb[2] = Some(idx - nx);
            }
            if j + 1 < ny {
                nb[3] = Some(idx + nx);
            }
            for q in nb.into_iter().flatten() {
                if selected[q] && label[q] == usize::MAX {
                    label[q] = id;
                    cells.push(q);
                }
            }
        }
        cells.sort_unstable();
        comps.push(cells);
    }
    comps
}

/// Marching-squares contours of a cell set at the midpoints between
/// selected and unselected cell centers.
pub fn polygonize_cells(g: &GridDomain, selected: &[bool], opts: PolygonizeOptions) -> Vec<ContourLoop> {
    let grid = g.grid;
    let sel = if opts.fill_holes { fill_holes(grid.nx, grid.ny, selected) } else { selected.to_vec() };
    let values: Vec<f64> = sel.iter().map(|&s| if s { 1.0 } else { 0.0 }).collect();
    let loops = march(&grid, &values, 0.5);
    match opts.simplify_cells {
        None => loops,
        Some(eps) => loops
            .into_iter()
            .map(|l| {
                let s = simplify_closed(&l.points, eps * grid.cell);
                // keep the simplification only if it is still a simple loop
                // with the same orientation
                let ok = s.len() >= 3
                    && Polygon::new(s.clone()).is_ok()
                    && (super::polygon::signed_area(&s) > 0.0) == (l.signed_area() > 0.0);
                if ok {
                    ContourLoop { points: s }
                } else {
                    l
                }
            })
            .collect(),
    }
}

/// Converts a selected cell set into hole-free simple polygons, one per
/// 4-connected component.
pub fn cut_set_to_polygons(g: &GridDomain, selected: &[bool]) -> Result<Vec<Polygon>> {
    cut_set_to_polygons_with(g, selected, PolygonizeOptions::default())
}

pub fn cut_set_to_polygons_with(
    g: &GridDomain,
    selected: &[bool],
    opts: PolygonizeOptions,
) -> Result<Vec<Polygon>> {
    if selected.len() != g.grid.len() {
        return Err(Error::DimensionMismatch(format!(
            "selection has {} cells, grid has {}",
            selected.len(),
            g.grid.len()
        )));
    }
    if let Some(idx) = selected.iter().zip(g.mask()).position(|(&s, &m)| s && !m) {
        return Err(Error::InvalidDomain(format!("selected cell {idx} is outside the domain")));
    }
    let opts = PolygonizeOptions { fill_holes: true, ..opts };
    polygonize_cells(g, selected, opts)
        .into_iter()
        .filter(|l| l.signed_area() > 0.0)
        .map(|l| Polygon::new(l.points))
        .collect()
}
