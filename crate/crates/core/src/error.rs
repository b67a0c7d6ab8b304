use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("resolution {resolution} too coarse: no cell center lies inside the domain")]
    ResolutionTooCoarse { resolution: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("flow is infeasible: {0}")]
    Infeasible(String),

    #[error("not a maximum flow: value {value} but residual cut has capacity {cut_capacity}")]
    NotMaxFlow { value: f64, cut_capacity: f64 },

    #[error("bisection failed to bracket: h = {h} is still feasible")]
    Bracket { h: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:e}): {what}")]
    Convergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("field does not match grid: {0}")]
    DimensionMismatch(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
