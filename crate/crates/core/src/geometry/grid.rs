use serde::{Deserialize, Serialize};

use super::point::Point;
use crate::error::{Error, Result};

/// Geometry of a cell-centered grid. Cell `(i, j)` covers
/// `origin + [iΔ, (i+1)Δ] × [jΔ, (j+1)Δ]`; storage is row-major with
/// `index = j * nx + i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub origin: Point,
    pub cell: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx % self.nx, idx / self.nx)
    }

    pub fn center(&self, i: usize, j: usize) -> Point {
        self.origin + Point::new((i as f64 + 0.5) * self.cell, (j as f64 + 0.5) * self.cell)
    }

    pub fn center_of(&self, idx: usize) -> Point {
        let (i, j) = self.coords(idx);
        self.center(i, j)
    }

    /// Index of `(i + di, j + dj)` if it lies on the grid.
    pub fn offset(&self, idx: usize, di: i32, dj: i32) -> Option<usize> {
        let (i, j) = self.coords(idx);
        let ii = i as i64 + di as i64;
        let jj = j as i64 + dj as i64;
        if ii < 0 || jj < 0 || ii >= self.nx as i64 || jj >= self.ny as i64 {
            return None;
        }
        Some(self.index(ii as usize, jj as usize))
    }

    /// Cell whose center is nearest to `p`, if `p` lies on the grid.
    pub fn locate(&self, p: Point) -> Option<usize> {
        let fx = (p.x - self.origin.x) / self.cell;
        let fy = (p.y - self.origin.y) / self.cell;
        if !(fx >= 0.0 && fy >= 0.0) {
            return None;
        }
        let (i, j) = (fx.floor() as usize, fy.floor() as usize);
        (i < self.nx && j < self.ny).then(|| self.index(i, j))
    }
}

/// A rasterized domain: `mask[idx]` is true iff the center of cell `idx`
/// lies inside the domain. The outermost ring of cells is always false.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDomain {
    pub grid: Grid,
    mask: Vec<bool>,
}

impl GridDomain {
    pub fn new(grid: Grid, mask: Vec<bool>) -> Result<Self> {
        if !(grid.cell > 0.0 && grid.cell.is_finite()) {
            return Err(Error::InvalidDomain(format!("cell size {} must be positive", grid.cell)));
        }
        if mask.len() != grid.len() || grid.nx < 3 || grid.ny < 3 {
            return Err(Error::InvalidDomain(format!(
                "mask of length {} does not fit a {}x{} grid with border",
                mask.len(),
                grid.nx,
                grid.ny
            )));
        }
        let (nx, ny) = (grid.nx, grid.ny);
        let border_hit = (0..nx).any(|i| mask[i] || mask[(ny - 1) * nx + i])
            || (0..ny).any(|j| mask[j * nx] || mask[j * nx + nx - 1]);
        if border_hit {
            return Err(Error::InvalidDomain("mask touches the grid border".into()));
        }
        if !mask.iter().any(|&m| m) {
            return Err(Error::InvalidDomain("mask has no interior cell".into()));
        }
        Ok(GridDomain { grid, mask })
    }

    /// Builds a domain from rows of `#` (inside) and `.` (outside), top row
    /// first. A one-cell empty border is added around the picture.
    pub fn from_ascii(rows: &[&str], cell: f64) -> Result<Self> {
        let h = rows.len();
        let w = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let (nx, ny) = (w + 2, h + 2);
        let mut mask = vec![false; nx * ny];
        for (r, row) in rows.iter().enumerate() {
            let j = h - r;
            for (c, ch) in row.chars().enumerate() {
                mask[j * nx + c + 1] = ch == '#';
            }
        }
        let grid = Grid { origin: Point::new(-cell, -cell), cell, nx, ny };
        GridDomain::new(grid, mask)
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn cell(&self) -> f64 {
        self.grid.cell
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.mask[idx]
    }

    /// Neighbor `(di, dj)` of `idx` if it is an interior cell.
    pub fn inside_neighbor(&self, idx: usize, di: i32, dj: i32) -> Option<usize> {
        self.grid.offset(idx, di, dj).filter(|&q| self.mask[q])
    }

    pub fn interior_cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    pub fn interior_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Grid distance transform: for each interior cell, the distance from its
    /// center to the nearest exterior cell center minus half a cell. Exact
    /// brute force over exterior cells adjacent to the domain.
    pub fn boundary_distance(&self) -> Vec<f64> {
        let g = self.grid;
        let rim: Vec<_> = (0..g.len())
            .filter(|&q| {
                !self.mask[q]
                    && [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]
                        .iter()
                        .any(|&(di, dj)| g.offset(q, di, dj).is_some_and(|r| self.mask[r]))
            })
            .map(|q| g.center_of(q))
            .collect();
        let mut d = vec![0.0; g.len()];
        for p in self.interior_cells() {
            let c = g.center_of(p);
            let m = rim.iter().map(|&r| c.dist(r)).fold(f64::INFINITY, f64::min);
            d[p] = m - 0.5 * g.cell;
        }
        d
    }

    /// Largest value of [`GridDomain::boundary_distance`].
    pub fn grid_inradius(&self) -> f64 {
        self.boundary_distance().into_iter().fold(0.0, f64::max).max(0.5 * self.grid.cell)
    }
}

/// `(#interior cells) · Δ²`.
pub fn grid_area(g: &GridDomain) -> f64 {
    g.interior_count() as f64 * g.cell() * g.cell()
}
