//! Exact polygonal domains, their rasterization onto cell-centered grids,
//! and the measurements (area, perimeter, quotient) that test subsets are
//! judged by.

mod contour;
mod grid;
mod point;
mod polygon;
mod region;
mod spec;

pub use contour::{march, simplify_closed, ContourLoop};
pub use grid::{grid_area, Grid, GridDomain};
pub use point::Point;
pub use polygon::{area, perimeter, quotient, quotient_of_set, Polygon};
pub use region::{
    components4, cut_set_to_polygons, cut_set_to_polygons_with, fill_holes, polygonize_cells, PolygonizeOptions,
    DEFAULT_SIMPLIFY_CELLS,
};
pub use spec::{rasterize, DomainSpec, Shape, DISK_SEGMENTS};
