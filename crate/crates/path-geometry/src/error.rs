use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] symplectic_core::Error),
    #[error("generator sample at t={0} is not symmetric")]
    NonSymmetric(f64),
    #[error("path is not causal: {0}")]
    NotCausal(String),
    #[error("causality error: {0}")]
    Causality(String),
    #[error("rank ambiguity: {0}")]
    RankAmbiguity(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
