use thiserror::Error;

/// Error type shared by every module.
///
/// Domain violations are hard errors rather than NaN returns: a silent NaN
/// would poison downstream quadrature sums and least-squares fits.
#[derive(Debug, Error)]
pub enum FyamError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("non-finite field value at node {index} = {location:?}")]
    NonFiniteField { index: usize, location: Vec<f64> },

    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("solver did not converge: {0}")]
    NoConvergence(String),

    #[error("ill-conditioned fit: {0}")]
    IllConditionedFit(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}
