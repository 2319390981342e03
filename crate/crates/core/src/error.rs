use thiserror::Error;

use crate::classifier::Flavor;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate problem: {0}")]
    Degenerate(String),

    #[error("singular basis after {pivots} pivots: {detail}")]
    SingularBasis { pivots: usize, detail: String },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("constrained l1 program is numerically infeasible (residual {residual:e}, lambda {lambda:e})")]
    Infeasible { residual: f64, lambda: f64 },

    #[error("{flavor} fit failed: {source}")]
    Fit {
        flavor: Flavor,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
