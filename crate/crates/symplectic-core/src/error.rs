use thiserror::Error;

/// Failures reported by the symplectic-core operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("non-finite matrix entries")]
    NonFinite,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numerical rank error: {0}")]
    NumericalRank(String),
    #[error("resolution error: {0}")]
    Resolution(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
