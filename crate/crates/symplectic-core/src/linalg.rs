//! Small dense helpers shared by the rest of the crate.

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Standard complex structure on R^{2n}, interleaved coordinates (x1, y1, x2, y2, ...).
pub fn j0(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(2 * k, 2 * k + 1)] = -1.0;
        j[(2 * k + 1, 2 * k)] = 1.0;
    }
    j
}

/// omega_0(u, v) = J0 u . v
pub fn omega0(u: &DVector<f64>, v: &DVector<f64>) -> f64 {
    let mut acc = 0.0;
    for k in 0..u.len() / 2 {
        acc += -u[2 * k + 1] * v[2 * k] + u[2 * k] * v[2 * k + 1];
    }
    acc
}

/// Half-dimension of a square matrix of even size.
pub fn half_dim(m: &DMatrix<f64>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!(
            "expected square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() == 0 || m.nrows() % 2 != 0 {
        return Err(Error::Dimension(format!("size {} is not even", m.nrows())));
    }
    Ok(m.nrows() / 2)
}

pub fn check_finite(m: &DMatrix<f64>) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn sym_part(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

pub fn expm(m: &DMatrix<f64>) -> DMatrix<f64> {
    m.exp()
}

/// Block diagonal sum of 2x2 rotations e^{theta_j J0}.
pub fn rotation_blocks(thetas: &[f64]) -> DMatrix<f64> {
    let n = thetas.len();
    let mut r = DMatrix::zeros(2 * n, 2 * n);
    for (k, &t) in thetas.iter().enumerate() {
        let (s, c) = t.sin_cos();
        r[(2 * k, 2 * k)] = c;
        r[(2 * k, 2 * k + 1)] = -s;
        r[(2 * k + 1, 2 * k)] = s;
        r[(2 * k + 1, 2 * k + 1)] = c;
    }
    r
}

/// Eigenvalues of a real square matrix via a real Schur decomposition.
pub fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    // The QR sweep can stall at the tightest deflation tolerance; loosen it
    // gradually, then retry on an orthogonally similar copy.
    for eps in [f64::EPSILON, 8.0 * f64::EPSILON, 64.0 * f64::EPSILON] {
        if let Some(schur) = Schur::try_new(m.clone(), eps, 20_000) {
            return Ok(schur.complex_eigenvalues().iter().copied().collect());
        }
    }
    let dim = m.nrows();
    let q = DMatrix::from_fn(dim, dim, |i, j| ((i * 7 + j * 13 + 1) as f64).sin()).qr().q();
    let similar = q.transpose() * m * &q;
    Schur::try_new(similar, 64.0 * f64::EPSILON, 100_000)
        .map(|schur| schur.complex_eigenvalues().iter().copied().collect())
        .ok_or_else(|| Error::Convergence("Schur iteration did not converge".into()))
}

/// Eigenvalues of a complex square matrix, with the same fallbacks as [`eigenvalues`].
pub fn complex_eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    for eps in [f64::EPSILON, 8.0 * f64::EPSILON, 64.0 * f64::EPSILON] {
        if let Some(ev) = Schur::try_new(m.clone(), eps, 20_000).and_then(|s| s.eigenvalues()) {
            return Ok(ev.iter().copied().collect());
        }
    }
    let dim = m.nrows();
    let q = CMatrix::from_fn(dim, dim, |i, j| {
        Complex64::new(((i * 7 + j * 13 + 1) as f64).sin(), ((i * 5 + j * 3 + 2) as f64).cos())
    })
    .qr()
    .q();
    let similar = q.adjoint() * m * &q;
    Schur::try_new(similar, 64.0 * f64::EPSILON, 100_000)
        .and_then(|s| s.eigenvalues())
        .map(|ev| ev.iter().copied().collect())
        .ok_or_else(|| Error::Convergence("complex Schur iteration did not converge".into()))
}

/// Ascending eigenvalues of a symmetric matrix (the symmetric part is used).
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(sym_part(m)).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

pub fn min_sym_eigenvalue(m: &DMatrix<f64>) -> f64 {
    sym_eigenvalues(m)[0]
}

/// Principal square root of a symmetric positive semidefinite matrix.
pub fn sqrt_spd(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(sym_part(m));
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| x.max(0.0).sqrt()));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Principal matrix logarithm for matrices with no eigenvalues on the closed
/// negative real axis, by inverse scaling and squaring.
pub fn logm(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let dim = a.nrows();
    let id = DMatrix::<f64>::identity(dim, dim);
    let mut x = a.clone();
    let mut squarings = 0u32;
    while (&x - &id).norm() > 0.25 {
        x = sqrtm_db(&x)?;
        squarings += 1;
        if squarings > 60 {
            return Err(Error::Convergence("logm: too many square roots".into()));
        }
    }
    let e = &x - &id;
    let mut term = e.clone();
    let mut acc = e.clone();
    for k in 2..200 {
        term = &term * &e;
        let c = if k % 2 == 0 { -1.0 } else { 1.0 } / k as f64;
        let inc = &term * c;
        let small = inc.norm() < 1e-18 * (1.0 + acc.norm());
        acc += inc;
        if small {
            break;
        }
    }
    Ok(acc * 2f64.powi(squarings as i32))
}

/// Denman-Beavers square root iteration.
fn sqrtm_db(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let dim = a.nrows();
    let mut y = a.clone();
    let mut z = DMatrix::<f64>::identity(dim, dim);
    for _ in 0..100 {
        let yi = y
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Domain("logm: singular iterate".into()))?;
        let zi = z
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Domain("logm: singular iterate".into()))?;
        let yn = (&y + zi) * 0.5;
        let zn = (&z + yi) * 0.5;
        let delta = (&yn - &y).norm();
        y = yn;
        z = zn;
        if delta <= 1e-15 * y.norm() {
            return Ok(y);
        }
    }
    Err(Error::Convergence("square root iteration did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_squares_to_minus_identity() {
        let j = j0(3);
        let id = DMatrix::<f64>::identity(6, 6);
        assert!((&j * &j + id).norm() < 1e-15);
    }

    #[test]
    fn j0_maps_e1_to_e2() {
        let j = j0(1);
        assert_eq!(j[(1, 0)], 1.0);
        assert_eq!(j[(0, 1)], -1.0);
    }

    #[test]
    fn omega_matches_matrix_form() {
        let u = DVector::from_vec(vec![0.3, -1.2, 2.0, 0.5]);
        let v = DVector::from_vec(vec![1.1, 0.4, -0.7, 0.9]);
        let direct = (j0(2) * &u).dot(&v);
        assert!((omega0(&u, &v) - direct).abs() < 1e-15);
    }

    #[test]
    fn logm_inverts_expm() {
        let x = DMatrix::from_row_slice(2, 2, &[0.1, -2.0, 1.5, -0.1]);
        let back = logm(&expm(&x)).unwrap();
        assert!((back - x).norm() < 1e-12);
    }

    #[test]
    fn sqrt_spd_squares_back() {
        let s = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
        let r = sqrt_spd(&s);
        assert!((&r * &r - s).norm() < 1e-14);
    }
}
