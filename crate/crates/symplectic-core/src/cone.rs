//! Symplectic matrices, the cone sp+(2n) and the invariant metrics G and H.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{check_finite, half_dim, j0, sym_eigenvalues, sym_part};

/// Default absolute tolerance for structural checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// True iff ||W^T J0 W - J0||_F <= tol.
pub fn is_symplectic(w: &DMatrix<f64>, tol: f64) -> Result<bool> {
    let n = half_dim(w)?;
    let j = j0(n);
    Ok((w.transpose() * &j * w - &j).norm() <= tol)
}

/// A matrix validated to be symplectic within `tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    base: DMatrix<f64>,
    tol: f64,
}

impl SymplecticMatrix {
    pub fn new(base: DMatrix<f64>, tol: f64) -> Result<Self> {
        check_finite(&base)?;
        let scale = 1.0 + base.norm().powi(2);
        if !is_symplectic(&base, tol * scale)? {
            return Err(Error::Domain("matrix is not symplectic within tolerance".into()));
        }
        Ok(Self { base, tol })
    }

    pub fn identity(n: usize) -> Self {
        Self { base: DMatrix::identity(2 * n, 2 * n), tol: DEFAULT_TOL }
    }

    pub fn n(&self) -> usize {
        self.base.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.base
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.base
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

/// An element X = J0 S of sp(2n) together with its Hamiltonian Hessian S.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeGenerator {
    pub n: usize,
    pub x: DMatrix<f64>,
    pub s: DMatrix<f64>,
    pub min_eig_s: f64,
    pub membership: Membership,
}

impl ConeGenerator {
    /// Wrap X, classifying it against the closed cone.
    pub fn new(x: DMatrix<f64>) -> Result<Self> {
        Self::with_tol(x, DEFAULT_TOL)
    }

    pub fn with_tol(x: DMatrix<f64>, tol: f64) -> Result<Self> {
        let (membership, min_eig_s) = cone_membership_tol(&x, tol)?;
        let n = x.nrows() / 2;
        let s = sym_part(&(-j0(n) * &x));
        Ok(Self { n, x, s, min_eig_s, membership })
    }

    /// X = J0 S from a symmetric S.
    pub fn from_hessian(s: DMatrix<f64>) -> Result<Self> {
        let n = half_dim(&s)?;
        Self::new(j0(n) * s)
    }

    /// X = theta_1 J0 + ... + theta_n J0 on the coordinate planes.
    pub fn from_thetas(thetas: &[f64]) -> Result<Self> {
        let n = thetas.len();
        let mut s = DMatrix::zeros(2 * n, 2 * n);
        for (k, &t) in thetas.iter().enumerate() {
            s[(2 * k, 2 * k)] = t;
            s[(2 * k + 1, 2 * k + 1)] = t;
        }
        Self::from_hessian(s)
    }

    pub fn is_interior(&self) -> bool {
        self.membership == Membership::Interior
    }
}

/// Classification of X against sp+(2n) with the default tolerance.
pub fn cone_membership(x: &DMatrix<f64>) -> Result<(Membership, f64)> {
    cone_membership_tol(x, DEFAULT_TOL)
}

/// Classify X by the smallest eigenvalue of S = -J0 X. The tolerance is
/// scaled by max(1, ||S||_F).
pub fn cone_membership_tol(x: &DMatrix<f64>, tol: f64) -> Result<(Membership, f64)> {
    let n = half_dim(x)?;
    check_finite(x)?;
    let s_raw = -j0(n) * x;
    let scale = s_raw.norm().max(1.0);
    let min_eig = sym_eigenvalues(&s_raw)[0];
    if (&s_raw - s_raw.transpose()).norm() > tol * scale {
        return Ok((Membership::Outside, min_eig));
    }
    let class = if min_eig > tol * scale {
        Membership::Interior
    } else if min_eig >= -tol * scale && s_raw.norm() > tol {
        Membership::Boundary
    } else {
        Membership::Outside
    };
    Ok((class, min_eig))
}

/// G(X) = (det X)^{1/2n}; zero on the boundary of the cone.
pub fn metric_g(x: &ConeGenerator) -> Result<f64> {
    match x.membership {
        Membership::Outside => Err(Error::Domain("metric G: X outside the closed cone".into())),
        Membership::Boundary => Ok(0.0),
        Membership::Interior => {
            let ev = sym_eigenvalues(&x.s);
            let mean_log: f64 = ev.iter().map(|l| l.ln()).sum::<f64>() / ev.len() as f64;
            Ok(mean_log.exp())
        }
    }
}

/// H(X) = (sum theta_j^{-2})^{-1/2} = sqrt(2) (-tr X^{-2})^{-1/2}.
pub fn metric_h_quadratic_harmonic(x: &ConeGenerator) -> Result<f64> {
    if x.membership != Membership::Interior {
        return Err(Error::Domain("metric H needs an interior generator".into()));
    }
    let xi = x
        .x
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Domain("metric H: singular generator".into()))?;
    let tr = (&xi * &xi).trace();
    if tr >= 0.0 {
        return Err(Error::Domain("metric H: -tr X^-2 is not positive".into()));
    }
    Ok(2f64.sqrt() / (-tr).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::expm;

    #[test]
    fn identity_is_symplectic() {
        assert!(is_symplectic(&DMatrix::identity(2, 2), 1e-12).unwrap());
    }

    #[test]
    fn rotation_is_symplectic() {
        let r = expm(&(j0(1) * 0.3));
        assert!(is_symplectic(&r, 1e-12).unwrap());
    }

    #[test]
    fn diag_two_one_is_not_symplectic() {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 1.0]));
        assert!(!is_symplectic(&d, 1e-12).unwrap());
    }

    #[test]
    fn odd_dimension_is_rejected() {
        assert!(matches!(is_symplectic(&DMatrix::identity(3, 3), 1e-12), Err(Error::Dimension(_))));
    }

    #[test]
    fn membership_examples() {
        let (m, e) = cone_membership(&j0(1)).unwrap();
        assert_eq!(m, Membership::Interior);
        assert!((e - 1.0).abs() < 1e-15);

        let b = j0(1) * DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(cone_membership(&b).unwrap().0, Membership::Boundary);

        let h = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let (m, e) = cone_membership(&h).unwrap();
        assert_eq!(m, Membership::Outside);
        assert!((e + 1.0).abs() < 1e-14);
    }

    #[test]
    fn non_hamiltonian_matrix_is_outside() {
        let x = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 2.0, 0.0]);
        // S = -J0 y is not symmetric
        let y = DMatrix::from_row_slice(2, 2, &[0.5, -1.0, 1.0, 0.0]);
        assert_eq!(cone_membership(&x).unwrap().0, Membership::Interior);
        assert_eq!(cone_membership(&y).unwrap().0, Membership::Outside);
    }

    #[test]
    fn non_finite_is_an_error() {
        let x = DMatrix::from_row_slice(2, 2, &[f64::NAN, 0.0, 0.0, 0.0]);
        assert_eq!(cone_membership(&x), Err(Error::NonFinite));
    }

    #[test]
    fn g_examples() {
        for n in 1..4 {
            let x = ConeGenerator::new(j0(n)).unwrap();
            assert!((metric_g(&x).unwrap() - 1.0).abs() < 1e-14);
        }
        let x = ConeGenerator::from_thetas(&[1.0, 4.0]).unwrap();
        assert!((metric_g(&x).unwrap() - 2.0).abs() < 1e-14);
        let b = ConeGenerator::from_hessian(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(metric_g(&b).unwrap(), 0.0);
        let o = ConeGenerator::new(-j0(1)).unwrap();
        assert!(metric_g(&o).is_err());
    }

    #[test]
    fn h_examples() {
        let x = ConeGenerator::from_thetas(&[0.7]).unwrap();
        assert!((metric_h_quadratic_harmonic(&x).unwrap() - 0.7).abs() < 1e-14);
        let x = ConeGenerator::from_thetas(&[1.0, 1.0]).unwrap();
        assert!((metric_h_quadratic_harmonic(&x).unwrap() - 0.5f64.sqrt()).abs() < 1e-14);
        let x = ConeGenerator::from_thetas(&[3.0, 4.0]).unwrap();
        assert!((metric_h_quadratic_harmonic(&x).unwrap() - 2.4).abs() < 1e-13);
        let b = ConeGenerator::from_hessian(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(metric_h_quadratic_harmonic(&b).is_err());
    }
}
