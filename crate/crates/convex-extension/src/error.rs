use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] symplectic_core::Error),
    #[error(transparent)]
    Path(#[from] path_geometry::Error),
    #[error("Hamiltonian not uniformly convex: minimal Hessian eigenvalue {0:e}")]
    NonConvex(f64),
    #[error("trajectory left the domain: {0}")]
    Boundary(String),
    #[error("domain: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
