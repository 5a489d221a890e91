use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] symplectic_core::Error),
    #[error("Hamiltonian not positive: minimum {0:e}")]
    NonPositive(f64),
    #[error("resolution: {0}")]
    Resolution(String),
    #[error("domain: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
