//! Symplectic normal form of generators in the open cone.

use nalgebra::{DMatrix, DVector, Matrix2, SymmetricEigen};

use crate::cone::{ConeGenerator, Membership};
use crate::error::{Error, Result};
use crate::linalg::{j0, omega0, sqrt_spd, sym_part};

/// X = sum of theta_j J_j on omega0-orthogonal symplectic planes.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    /// Rotation rates, sorted descending.
    pub thetas: Vec<f64>,
    /// Symplectic plane bases (e_j, f_j) with omega0(e_j, f_j) = 1 and X e_j = theta_j f_j.
    pub planes: Vec<(DVector<f64>, DVector<f64>)>,
    /// Complex structure of each plane in its basis.
    pub complex_structures: Vec<Matrix2<f64>>,
}

impl NormalForm {
    pub fn n(&self) -> usize {
        self.thetas.len()
    }

    /// Columns e_1, f_1, e_2, f_2, ...; a symplectic matrix.
    pub fn basis(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut p = DMatrix::zeros(2 * n, 2 * n);
        for (k, (e, f)) in self.planes.iter().enumerate() {
            p.set_column(2 * k, e);
            p.set_column(2 * k + 1, f);
        }
        p
    }

    pub fn reconstruct(&self) -> DMatrix<f64> {
        let n = self.n();
        let p = self.basis();
        let j = j0(n);
        let p_inv = -&j * p.transpose() * &j;
        let mut d = DMatrix::zeros(2 * n, 2 * n);
        for (k, (&t, jj)) in self.thetas.iter().zip(&self.complex_structures).enumerate() {
            d.view_mut((2 * k, 2 * k), (2, 2)).copy_from(&(jj * t));
        }
        p * d * p_inv
    }

    /// Largest |omega0| pairing between distinct planes.
    pub fn max_cross_pairing(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..self.n() {
            for b in 0..self.n() {
                if a == b {
                    continue;
                }
                let (ea, fa) = &self.planes[a];
                let (eb, fb) = &self.planes[b];
                for (u, v) in [(ea, eb), (ea, fb), (fa, eb), (fa, fb)] {
                    worst = worst.max(omega0(u, v).abs());
                }
            }
        }
        worst
    }
}

/// Normal form of an interior cone generator.
pub fn normal_form(x: &ConeGenerator) -> Result<NormalForm> {
    if x.membership != Membership::Interior {
        return Err(Error::Domain("normal form needs an interior generator".into()));
    }
    let n = x.n;
    let r = sqrt_spd(&x.s);
    let r_inv = r
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Domain("singular Hessian".into()))?;
    // K = R J0 R is antisymmetric and conjugate to X.
    let k = &r * j0(n) * &r;
    let m = sym_part(&(k.transpose() * &k));
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 100_000)
        .ok_or_else(|| Error::Convergence("symmetric eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut chosen: Vec<DVector<f64>> = Vec::with_capacity(2 * n);
    let mut pairs: Vec<(f64, DVector<f64>, DVector<f64>)> = Vec::with_capacity(n);
    for &idx in &order {
        if pairs.len() == n {
            break;
        }
        let mut u = eig.eigenvectors.column(idx).into_owned();
        for c in &chosen {
            let proj = c.dot(&u);
            u -= c * proj;
        }
        let nu = u.norm();
        if nu < 1e-6 {
            continue;
        }
        u /= nu;
        let mut v = &k * &u;
        for c in &chosen {
            let proj = c.dot(&v);
            v -= c * proj;
        }
        let theta = v.norm();
        if theta <= 0.0 {
            return Err(Error::Domain("degenerate rotation rate".into()));
        }
        v /= theta;
        chosen.push(u.clone());
        chosen.push(v.clone());
        pairs.push((theta, u, v));
    }
    if pairs.len() != n {
        return Err(Error::NumericalRank("could not split into symplectic planes".into()));
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut thetas = Vec::with_capacity(n);
    let mut planes = Vec::with_capacity(n);
    for (theta, u, v) in pairs {
        let sc = theta.sqrt();
        planes.push((&r_inv * u * sc, &r_inv * v * sc));
        thetas.push(theta);
    }
    let jj = Matrix2::new(0.0, -1.0, 1.0, 0.0);
    Ok(NormalForm { thetas, planes, complex_structures: vec![jj; n] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::metric_g;

    #[test]
    fn standard_structure() {
        let x = ConeGenerator::new(j0(1)).unwrap();
        let nf = normal_form(&x).unwrap();
        assert_eq!(nf.thetas.len(), 1);
        assert!((nf.thetas[0] - 1.0).abs() < 1e-14);
        assert!((nf.reconstruct() - &x.x).norm() < 1e-13);
    }

    #[test]
    fn split_block_example() {
        let s = DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 4.0, 1.0, 1.0]));
        let x = ConeGenerator::from_hessian(s).unwrap();
        let nf = normal_form(&x).unwrap();
        assert!((nf.thetas[0] - 4.0).abs() < 1e-13);
        assert!((nf.thetas[1] - 1.0).abs() < 1e-13);
        assert!((nf.reconstruct() - &x.x).norm() < 1e-12);
        assert!(nf.max_cross_pairing() < 1e-13);
    }

    #[test]
    fn planes_are_symplectic_and_mapped_by_x() {
        let s = DMatrix::from_row_slice(
            4,
            4,
            &[3.0, 0.5, 0.2, 0.0, 0.5, 2.0, 0.1, 0.3, 0.2, 0.1, 1.5, -0.4, 0.0, 0.3, -0.4, 1.0],
        );
        let x = ConeGenerator::from_hessian(s).unwrap();
        let nf = normal_form(&x).unwrap();
        for (t, (e, f)) in nf.thetas.iter().zip(&nf.planes) {
            assert!((omega0(e, f) - 1.0).abs() < 1e-12);
            assert!((&x.x * e - f * *t).norm() < 1e-11);
        }
        assert!(nf.thetas[0] >= nf.thetas[1]);
        let g = metric_g(&x).unwrap();
        assert!((g - (nf.thetas[0] * nf.thetas[1]).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn tied_rates_still_reconstruct() {
        let x = ConeGenerator::new(j0(3) * 2.5).unwrap();
        let nf = normal_form(&x).unwrap();
        assert!(nf.thetas.iter().all(|t| (t - 2.5).abs() < 1e-13));
        assert!((nf.reconstruct() - &x.x).norm() < 1e-12);
    }

    #[test]
    fn boundary_is_rejected() {
        let b = ConeGenerator::from_hessian(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(normal_form(&b).is_err());
    }
}
