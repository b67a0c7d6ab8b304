//! Grid discretization of the continuous max-flow problem: bisection on
//! the production strength brackets the Cheeger constant, min cuts give
//! candidate Cheeger sets and max flows give certificate fields.

mod certificate;
mod dual;
mod network;
mod solver;
mod stencil;
mod subdomain;

pub use certificate::{
    block_divergence, certificate_stats, certify_lower_bound, default_tolerance, CertificateReport, CertificateStats,
    Verdict,
};
pub use dual::{quotient_of_candidate, DualQuotient};
pub use network::{build_grid_network, flow_to_vector_field, GridNetwork};
pub use solver::{cheeger_constant, cut_cells, cut_ratio, feasible, solve_at, solve_from, CheegerResult, CheegerSummary, FlowSolve, DEFAULT_TOL_H};
pub use stencil::{CutMetricStencil, StencilKind};
pub use subdomain::{subdomain_bound_suite, SubdomainReport, SubsetSample};
