//! Isoperimetric (Cheeger) constants and first Dirichlet eigenvalues of
//! planar domains.
//!
//! The Cheeger constant `h = inf |∂S|/|S|` is bracketed from two sides:
//! explicit test subsets give upper bounds, and vector fields with
//! `|V| <= 1`, `div V >= h` give lower bounds. A grid discretization of
//! the continuous max-flow problem produces both at once: the minimum cut
//! is a near-optimal subset and the maximum flow is a near-optimal field.
//!
//! Modules:
//! - [`geometry`]: polygons, rasterization, marching squares, cut-set polygonization
//! - [`distance`]: distance-to-boundary fields, inradius bounds, level-set identities
//! - [`maxflow`]: networks, Dinic max flow, min cuts, DIMACS I/O
//! - [`cheeger`]: grid flow networks, bisection solver, certificates, dual quotient
//! - [`spectral`]: Dirichlet Laplacian, inverse iteration, eigenvalue inequalities
//! - [`field_io`]: CSV import/export of grid fields

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod check;
pub mod cheeger;
pub mod distance;
pub mod error;
pub mod field;
pub mod field_io;
pub mod geometry;
pub mod maxflow;
pub mod spectral;

pub use check::{InequalityCheck, Relation};
pub use error::{Error, Result};
pub use field::{ScalarField, VectorField};
pub use geometry::{DomainSpec, Grid, GridDomain, Point, Polygon, Shape};
