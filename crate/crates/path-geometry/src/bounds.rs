//! Length bound on the closed positively elliptic region.

use symplectic_core::krein::{krein_positive_angles, krein_spectrum_tol};
use symplectic_core::SampledSymplecticPath;

use crate::error::{Error, Result};
use crate::integrate::length_g_path;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticBound {
    pub length: f64,
    /// (1/n) sum (theta_j(end) - theta_j(start)) from Krein-positive angles.
    pub bound: f64,
    pub pass: bool,
}

/// Loose membership test for the closure of the positively elliptic region:
/// spectrum within `tol` of the circle and Krein-positive eigenvalues in the
/// closed upper half plane.
pub fn in_closed_elliptic_region(w: &nalgebra::DMatrix<f64>, tol: f64) -> bool {
    match krein_spectrum_tol(w, tol) {
        Ok(spec) => {
            spec.off_circle.is_empty()
                && spec.on_circle.iter().all(|e| {
                    e.is_plus_minus_one()
                        || (e.lambda.im > 0.0 && e.krein_signature.1 == 0)
                        || (e.lambda.im < 0.0 && e.krein_signature.0 == 0)
                })
        }
        Err(_) => false,
    }
}

pub fn elliptic_length_bound_check(path: &SampledSymplecticPath, tol: f64) -> Result<EllipticBound> {
    for (k, w) in path.matrices.iter().enumerate() {
        if !in_closed_elliptic_region(w, 1e-6 * (1.0 + w.norm())) {
            return Err(Error::Domain(format!("node {k} lies outside the closed elliptic region")));
        }
    }
    let n = path.n() as f64;
    let a0 = krein_positive_angles(path.start())?;
    let a1 = krein_positive_angles(path.end())?;
    if a0.len() != path.n() || a1.len() != path.n() {
        return Err(Error::Domain("could not resolve n Krein-positive angles".into()));
    }
    let bound = a1.iter().zip(&a0).map(|(b, a)| b - a).sum::<f64>() / n;
    let length = length_g_path(path)?;
    Ok(EllipticBound { length, bound, pass: length <= bound + tol })
}

/// Sorted Krein-positive angles at every node of a path in the closed
/// elliptic region.
pub fn krein_angle_tracks(path: &SampledSymplecticPath) -> Result<Vec<Vec<f64>>> {
    path.matrices
        .iter()
        .map(|w| krein_positive_angles(w).map_err(Error::from))
        .collect()
}
