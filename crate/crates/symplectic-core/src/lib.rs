//! Linear symplectic algebra on R^{2n}: the cone of positive Hamiltonian
//! generators, the invariant metrics G and H, normal forms, Krein signatures,
//! the Gel'fand-Lidskii function and its continuous lift along paths.
//!
//! Coordinates are interleaved (x1, y1, ..., xn, yn) and J0 acts on each
//! (x, y) plane by [[0, -1], [1, 0]].

pub mod cone;
pub mod elliptic;
pub mod error;
pub mod krein;
pub mod linalg;
pub mod maslov;
pub mod normal_form;
pub mod path;
pub mod quadrature;
pub mod random;

pub use cone::{
    cone_membership, cone_membership_tol, is_symplectic, metric_g, metric_h_quadratic_harmonic,
    ConeGenerator, Membership, SymplecticMatrix, DEFAULT_TOL,
};
pub use elliptic::log_elliptic;
pub use error::{Error, Result};
pub use krein::{
    gelfand_lidskii_upsilon, is_positively_elliptic, krein_form, krein_positive_angles,
    krein_spectrum, krein_spectrum_tol, KreinSpectrum, UnitCircleEigen,
};
pub use linalg::{expm, j0, omega0};
pub use maslov::{maslov_lift, maslov_lift_from, LiftedMaslov};
pub use normal_form::{normal_form, NormalForm};
pub use path::{PathMeta, SampledSymplecticPath};
