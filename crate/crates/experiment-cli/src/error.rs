use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("schema mismatch: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] symplectic_core::Error),
    #[error(transparent)]
    Path(#[from] path_geometry::Error),
    #[error(transparent)]
    Circle(#[from] circle_dynamics::Error),
    #[error(transparent)]
    Convex(#[from] convex_extension::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
