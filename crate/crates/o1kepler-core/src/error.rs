//! Error taxonomy shared by every module.
//!
//! The CLI maps these onto its exit-code contract: parameter/domain errors
//! are usage errors (exit 2), the rest are resource/accuracy errors (exit 3).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KeplerError {
    /// A constructor or operation received a parameter outside its documented range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A function argument (evaluation point, grid node) is outside the domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure cannot reach the requested accuracy.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    /// A configured resource budget (basis size, memory) would be exceeded.
    #[error("resource error: {0}")]
    Resource(String),

    /// A truncated-space guard subspace is empty; identities would be corrupted.
    #[error("guard error: {0}")]
    Guard(String),

    /// A numerical kernel failed outright (non-convergence, invalid decomposition).
    #[error("numerical error: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, KeplerError>;

impl KeplerError {
    /// True for errors that indicate bad input rather than a failed computation.
    pub fn is_usage(&self) -> bool {
        matches!(self, KeplerError::Parameter(_) | KeplerError::Domain(_))
    }
}
