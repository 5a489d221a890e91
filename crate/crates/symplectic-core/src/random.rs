//! Seeded random generators for symplectic test data.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{expm, j0, rotation_blocks};

/// Symmetric matrix with N(0,1) upper-triangle entries; draws row by row.
pub fn random_symmetric<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<f64> {
    let mut s = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let v: f64 = rng.sample(StandardNormal);
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
    }
    s
}

/// B B^T / dim + floor * I with B Gaussian.
pub fn random_spd<R: Rng + ?Sized>(dim: usize, floor: f64, rng: &mut R) -> DMatrix<f64> {
    let b = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    &b * b.transpose() / dim as f64 + DMatrix::identity(dim, dim) * floor
}

/// J0 S with S random symmetric of Frobenius norm `scale`.
pub fn random_hamiltonian<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> DMatrix<f64> {
    let s = random_symmetric(2 * n, rng);
    let s = &s * (scale / s.norm().max(f64::MIN_POSITIVE));
    j0(n) * s
}

/// exp(X) for a random Hamiltonian X of norm `scale`.
pub fn random_symplectic<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> DMatrix<f64> {
    expm(&random_hamiltonian(n, scale, rng))
}

/// A^{-1} (rotation by thetas) A with A random symplectic.
pub fn random_elliptic<R: Rng + ?Sized>(thetas: &[f64], scale: f64, rng: &mut R) -> DMatrix<f64> {
    let a = random_symplectic(thetas.len(), scale, rng);
    let a_inv = symplectic_inverse(&a);
    a_inv * rotation_blocks(thetas) * a
}

/// W^{-1} = -J0 W^T J0 for symplectic W.
pub fn symplectic_inverse(w: &DMatrix<f64>) -> DMatrix<f64> {
    let j = j0(w.nrows() / 2);
    -&j * w.transpose() * &j
}
