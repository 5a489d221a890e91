//! Convex Hamiltonians on a disk and the weak Lorentz-Finsler structure they define.

pub mod domain;
pub mod error;
pub mod fiberwise;
pub mod functionals;
pub mod grid;
pub mod hamiltonian;

pub use domain::GridDomain;
pub use error::{Error, Result};
pub use fiberwise::{disk_samples, fiberwise_length_identity, linearized_path, ruelle_maslov_average, FiberwiseReport, RuelleReport, Sampling};
pub use functionals::{functional_v_of_boundary, length_g_cal, slice_values, varthm_check, VarthmReport};
pub use grid::ConvexHamiltonianGrid;
pub use hamiltonian::{ConvexHamiltonianPath, Hess, Point};
