use serde::{Deserialize, Serialize};

use super::grid::{Grid, GridDomain};
use super::point::Point;
use super::polygon::Polygon;
use super::region::cut_set_to_polygons;
use crate::error::{Error, Result};

/// Number of edges used for the polygonal model of a disk primitive.
pub const DISK_SEGMENTS: usize = 1024;

pub const MIN_RESOLUTION: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Polygon(Polygon),
    Disk { center: Point, r: f64 },
    /// Axis-aligned `w × h` rectangle centered at `center`.
    Rectangle { center: Point, w: f64, h: f64 },
    /// `[0,w] × [0,h]` with the square `[w-notch, w] × [h-notch, h]` removed.
    LShape { w: f64, h: f64, notch: f64 },
    /// Already-rasterized domain.
    Mask(GridDomain),
}

/// A domain together with the number of cells across the longer side of
/// its bounding box.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    pub shape: Shape,
    pub resolution: usize,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    center: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    notch: Option<f64>,
    resolution: usize,
}

fn positive(name: &str, v: Option<f64>) -> Result<f64> {
    match v {
        Some(x) if x > 0.0 && x.is_finite() => Ok(x),
        Some(x) => Err(Error::InvalidDomain(format!("`{name}` must be positive and finite, got {x}"))),
        None => Err(Error::InvalidDomain(format!("missing field `{name}`"))),
    }
}

impl DomainSpec {
    pub fn new(shape: Shape, resolution: usize) -> Result<Self> {
        if resolution < MIN_RESOLUTION {
            return Err(Error::InvalidDomain(format!(
                "resolution {resolution} is below the minimum of {MIN_RESOLUTION}"
            )));
        }
        let spec = DomainSpec { shape, resolution };
        spec.validate()?;
        Ok(spec)
    }

    pub fn disk(center: Point, r: f64, resolution: usize) -> Result<Self> {
        DomainSpec::new(Shape::Disk { center, r }, resolution)
    }

    pub fn rectangle(w: f64, h: f64, resolution: usize) -> Result<Self> {
        DomainSpec::new(Shape::Rectangle { center: Point::new(w / 2.0, h / 2.0), w, h }, resolution)
    }

    pub fn l_shape(w: f64, h: f64, notch: f64, resolution: usize) -> Result<Self> {
        DomainSpec::new(Shape::LShape { w, h, notch }, resolution)
    }

    pub fn polygon(p: Polygon, resolution: usize) -> Result<Self> {
        DomainSpec::new(Shape::Polygon(p), resolution)
    }

    fn validate(&self) -> Result<()> {
        match &self.shape {
            Shape::Disk { center, r } => {
                positive("r", Some(*r))?;
                if !center.is_finite() {
                    return Err(Error::InvalidDomain("non-finite center".into()));
                }
            }
            Shape::Rectangle { center, w, h } => {
                positive("w", Some(*w))?;
                positive("h", Some(*h))?;
                if !center.is_finite() {
                    return Err(Error::InvalidDomain("non-finite center".into()));
                }
            }
            Shape::LShape { w, h, notch } => {
                positive("w", Some(*w))?;
                positive("h", Some(*h))?;
                positive("notch", Some(*notch))?;
                if *notch >= w.min(*h) {
                    return Err(Error::InvalidDomain(format!("notch {notch} must be smaller than min(w, h)")));
                }
            }
            Shape::Polygon(_) | Shape::Mask(_) => {}
        }
        Ok(())
    }

    pub fn kind(&self) -> &'static str {
        match self.shape {
            Shape::Polygon(_) => "polygon",
            Shape::Disk { .. } => "disk",
            Shape::Rectangle { .. } => "rectangle",
            Shape::LShape { .. } => "l_shape",
            Shape::Mask(_) => "mask",
        }
    }

    /// Exact (or, for disks, finely polygonal) boundary of the domain. For
    /// masks this is the polygonized largest component.
    pub fn boundary_polygon(&self) -> Result<Polygon> {
        match &self.shape {
            Shape::Polygon(p) => Ok(p.clone()),
            Shape::Disk { center, r } => Polygon::regular(DISK_SEGMENTS, *center, *r),
            Shape::Rectangle { center, w, h } => Polygon::rectangle(
                *center - Point::new(w / 2.0, h / 2.0),
                *center + Point::new(w / 2.0, h / 2.0),
            ),
            Shape::LShape { w, h, notch } => Polygon::new(vec![
                Point::new(0.0, 0.0),
                Point::new(*w, 0.0),
                Point::new(*w, h - notch),
                Point::new(w - notch, h - notch),
                Point::new(w - notch, *h),
                Point::new(0.0, *h),
            ]),
            Shape::Mask(g) => cut_set_to_polygons(g, g.mask())?
                .into_iter()
                .max_by(|a, b| a.area().total_cmp(&b.area()))
                .ok_or_else(|| Error::InvalidDomain("empty mask".into())),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawSpec = serde_json::from_str(s)?;
        let center = raw.center.map(Point::from);
        let shape = match raw.kind.as_str() {
            "polygon" => {
                let v = raw
                    .vertices
                    .ok_or_else(|| Error::InvalidDomain("missing field `vertices`".into()))?;
                Shape::Polygon(Polygon::new(v.into_iter().map(Point::from).collect())?)
            }
            "disk" => Shape::Disk { center: center.unwrap_or_default(), r: positive("r", raw.r)? },
            "rectangle" => {
                let w = positive("w", raw.w)?;
                let h = positive("h", raw.h)?;
                Shape::Rectangle { center: center.unwrap_or(Point::new(w / 2.0, h / 2.0)), w, h }
            }
            "l_shape" => {
                let w = positive("w", raw.w)?;
                let h = positive("h", raw.h)?;
                let notch = match raw.notch {
                    Some(n) => positive("notch", Some(n))?,
                    None => 0.5 * w.min(h),
                };
                Shape::LShape { w, h, notch }
            }
            other => return Err(Error::InvalidDomain(format!("unknown domain kind `{other}`"))),
        };
        DomainSpec::new(shape, raw.resolution)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut raw = RawSpec { kind: self.kind().to_string(), resolution: self.resolution, ..Default::default() };
        match &self.shape {
            Shape::Polygon(p) => raw.vertices = Some(p.vertices().iter().map(|&v| v.into()).collect()),
            Shape::Disk { center, r } => {
                raw.center = Some((*center).into());
                raw.r = Some(*r);
            }
            Shape::Rectangle { center, w, h } => {
                raw.center = Some((*center).into());
                raw.w = Some(*w);
                raw.h = Some(*h);
            }
            Shape::LShape { w, h, notch } => {
                raw.w = Some(*w);
                raw.h = Some(*h);
                raw.notch = Some(*notch);
            }
            Shape::Mask(_) => {
                return Err(Error::InvalidDomain("raster masks have no JSON form".into()));
            }
        }
        Ok(serde_json::to_string(&raw)?)
    }
}

/// Rasterizes a domain onto a cell-centered grid with cell size
/// `bbox_longer_side / resolution` and a one-cell empty border. A cell is
/// inside iff its center lies strictly inside the domain.
pub fn rasterize(spec: &DomainSpec) -> Result<GridDomain> {
    if let Shape::Mask(g) = &spec.shape {
        return Ok(g.clone());
    }
    let poly = spec.boundary_polygon()?;
    rasterize_polygon(&poly, spec.resolution)
}

pub(crate) fn rasterize_polygon(poly: &Polygon, resolution: usize) -> Result<GridDomain> {
    let (lo, hi) = poly.bbox();
    let ext = hi - lo;
    let cell = ext.x.max(ext.y) / resolution as f64;
    let cells_across = |len: f64| ((len / cell) - 1e-9).ceil().max(1.0) as usize;
    let nx = cells_across(ext.x) + 2;
    let ny = cells_across(ext.y) + 2;
    let grid = Grid { origin: lo - Point::new(cell, cell), cell, nx, ny };

    let verts = poly.vertices();
    let n = verts.len();
    let mut mask = vec![false; nx * ny];
    let mut xs = Vec::new();
    for j in 0..ny {
        let y = grid.center(0, j).y;
        xs.clear();
        let mut horizontal: Vec<(f64, f64)> = Vec::new();
        for k in 0..n {
            let (a, b) = (verts[k], verts[(k + 1) % n]);
            if a.y == y && b.y == y {
                horizontal.push((a.x.min(b.x), a.x.max(b.x)));
            }
            if (a.y > y) != (b.y > y) {
                xs.push(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
            }
        }
        xs.sort_by(f64::total_cmp);
        for i in 0..nx {
            let x = grid.center(i, j).x;
            if xs.contains(&x) || horizontal.iter().any(|&(l, r)| x >= l && x <= r) {
                continue;
            }
            let right = xs.len() - xs.partition_point(|&c| c <= x);
            mask[j * nx + i] = right % 2 == 1;
        }
    }
    // the padding guarantees an empty border, so only emptiness can fail
    if !mask.iter().any(|&m| m) {
        return Err(Error::ResolutionTooCoarse { resolution });
    }
    GridDomain::new(grid, mask)
}
