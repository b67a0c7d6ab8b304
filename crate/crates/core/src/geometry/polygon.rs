use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::point::Point;
use crate::error::{Error, Result};

/// A simple polygon with counterclockwise vertex order. The closing edge
/// from the last vertex back to the first is implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl TryFrom<Vec<Point>> for Polygon {
    type Error = Error;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        Polygon::new(v)
    }
}

impl From<Polygon> for Vec<Point> {
    fn from(p: Polygon) -> Self {
        p.vertices
    }
}

impl Polygon {
    /// Validates and normalizes a vertex loop: consecutive duplicates are
    /// dropped, clockwise input is reversed, and self-intersecting or
    /// zero-area input is rejected.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidDomain("non-finite vertex".into()));
        }
        vertices.dedup();
        while vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidDomain(format!(
                "polygon needs at least 3 distinct vertices, got {}",
                vertices.len()
            )));
        }
        let a = signed_area(&vertices);
        let scale = bbox_diag(&vertices);
        if a.abs() <= 1e-14 * scale * scale || a.abs() == 0.0 {
            return Err(Error::InvalidDomain("polygon has zero area".into()));
        }
        if a < 0.0 {
            vertices.reverse();
        }
        if let Some((i, j)) = first_self_intersection(&vertices) {
            return Err(Error::InvalidDomain(format!(
                "polygon is not simple: edges {i} and {j} intersect"
            )));
        }
        Ok(Polygon { vertices })
    }

    /// Regular `n`-gon inscribed in the circle of radius `r` about `center`.
    pub fn regular(n: usize, center: Point, r: f64) -> Result<Self> {
        let vertices = (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                center + Point::new(r * t.cos(), r * t.sin())
            })
            .collect();
        Polygon::new(vertices)
    }

    pub fn rectangle(min: Point, max: Point) -> Result<Self> {
        Polygon::new(vec![
            min,
            Point::new(max.x, min.y),
            max,
            Point::new(min.x, max.y),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn quotient(&self) -> f64 {
        self.perimeter() / self.area()
    }

    /// No clockwise turn at any vertex (vertices are stored counterclockwise).
    pub fn is_convex(&self) -> bool {
        let v = &self.vertices;
        let n = v.len();
        let scale = self.perimeter() * self.perimeter();
        (0..n).all(|i| (v[(i + 1) % n] - v[i]).cross(v[(i + 2) % n] - v[(i + 1) % n]) >= -1e-12 * scale)
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bbox(&self) -> (Point, Point) {
        bbox(&self.vertices)
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Result<Polygon> {
        Polygon::new(self.vertices.iter().map(|&p| f(p)).collect())
    }

    pub fn scaled(&self, s: f64) -> Result<Polygon> {
        self.map(|p| p * s)
    }

    /// Distance from `p` to the nearest edge.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges()
            .map(|(a, b)| p.dist_to_segment(a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Strict interior test. Points exactly on an edge are outside.
    pub fn contains(&self, p: Point) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            let ab = b - a;
            let ap = p - a;
            if ab.cross(ap) == 0.0
                && p.x >= a.x.min(b.x)
                && p.x <= a.x.max(b.x)
                && p.y >= a.y.min(b.y)
                && p.y <= a.y.max(b.y)
            {
                return false;
            }
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Radius of the largest inscribed disk, found by maximizing the
    /// boundary distance from a coarse sample followed by compass search.
    pub fn inradius(&self) -> f64 {
        self.incenter().1
    }

    pub fn incenter(&self) -> (Point, f64) {
        const SAMPLES: usize = 48;
        let (lo, hi) = self.bbox();
        let ext = hi - lo;
        let mut seeds: Vec<(f64, Point)> = Vec::new();
        for j in 0..SAMPLES {
            for i in 0..SAMPLES {
                let p = lo
                    + Point::new(
                        ext.x * (i as f64 + 0.5) / SAMPLES as f64,
                        ext.y * (j as f64 + 0.5) / SAMPLES as f64,
                    );
                if self.contains(p) {
                    seeds.push((self.boundary_distance(p), p));
                }
            }
        }
        if seeds.is_empty() {
            // thin polygon: fall back to vertex centroid
            let c = self.vertices.iter().fold(Point::default(), |s, &p| s + p)
                * (1.0 / self.vertices.len() as f64);
            seeds.push((self.boundary_distance(c), c));
        }
        seeds.sort_by(|a, b| b.0.total_cmp(&a.0));
        seeds.truncate(8);

        let step0 = ext.x.max(ext.y) / SAMPLES as f64;
        let mut best = (Point::default(), 0.0);
        for (d0, p0) in seeds {
            let (p, d) = self.compass_ascent(p0, d0, step0);
            if d > best.1 {
                best = (p, d);
            }
        }
        best
    }

    fn compass_ascent(&self, mut p: Point, mut d: f64, mut step: f64) -> (Point, f64) {
        let dirs: Vec<Point> = (0..8)
            .map(|k| Point::new(1.0, 0.0).rotate(PI / 4.0 * k as f64))
            .collect();
        let floor = step * 1e-10;
        while step > floor {
            let mut moved = false;
            for &u in &dirs {
                let q = p + u * step;
                if !self.contains(q) {
                    continue;
                }
                let dq = self.boundary_distance(q);
                if dq > d {
                    p = q;
                    d = dq;
                    moved = true;
                    break;
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        (p, d)
    }
}

pub(crate) fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    let mut s = 0.0;
    for i in 0..n {
        s += v[i].cross(v[(i + 1) % n]);
    }
    0.5 * s
}

pub(crate) fn bbox(v: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in v {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

fn bbox_diag(v: &[Point]) -> f64 {
    let (lo, hi) = bbox(v);
    (hi - lo).norm()
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

/// Brute-force O(n²) check with a bounding-box prefilter.
fn first_self_intersection(v: &[Point]) -> Option<(usize, usize)> {
    let n = v.len();
    let boxes: Vec<(Point, Point)> = (0..n).map(|i| bbox(&[v[i], v[(i + 1) % n]])).collect();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (c, d) = (v[j], v[(j + 1) % n]);
            let (lo1, hi1) = boxes[i];
            let (lo2, hi2) = boxes[j];
            if lo1.x > hi2.x || lo2.x > hi1.x || lo1.y > hi2.y || lo2.y > hi1.y {
                continue;
            }
            if adjacent {
                // adjacent edges share one vertex; they may only overlap if
                // the path doubles back on itself
                let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if orient(shared, p, q) == 0.0 && (p - shared).dot(q - shared) > 0.0 {
                    return Some((i, j));
                }
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Shoelace area.
pub fn area(p: &Polygon) -> f64 {
    p.area()
}

pub fn perimeter(p: &Polygon) -> f64 {
    p.perimeter()
}

/// `|∂S|/|S|` for a single test subset.
pub fn quotient(p: &Polygon) -> f64 {
    p.quotient()
}

/// Quotient of a disjoint union: total perimeter over total area.
pub fn quotient_of_set(ps: &[Polygon]) -> Option<f64> {
    let a: f64 = ps.iter().map(Polygon::area).sum();
    if ps.is_empty() || a <= 0.0 {
        return None;
    }
    Some(ps.iter().map(Polygon::perimeter).sum::<f64>() / a)
}
