//! Conjugate instants along geodesics and the Morse co-index.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen, SVD};
use symplectic_core::linalg::j0;
use symplectic_core::{metric_g, normal_form, ConeGenerator};

use crate::error::{Error, Result};
use crate::geodesic::adjoint_nodes;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstantSource {
    ClosedForm,
    Numeric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateInstant {
    pub t: f64,
    pub multiplicity: usize,
    pub source: InstantSource,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateReport {
    pub instants: Vec<ConjugateInstant>,
    /// Sum of multiplicities over instants in the open interval (0, T).
    pub coindex: usize,
}

/// Orthonormal basis J0 E_k of sp(2n), E_k running over the orthonormal
/// symmetric basis ordered (0,0), (0,1), ..., (0,2n-1), (1,1), ...
pub fn sp_basis(n: usize) -> Vec<DMatrix<f64>> {
    let dim = 2 * n;
    let j = j0(n);
    let mut out = Vec::with_capacity(n * (2 * n + 1));
    for a in 0..dim {
        for b in a..dim {
            let mut e = DMatrix::zeros(dim, dim);
            if a == b {
                e[(a, a)] = 1.0;
            } else {
                let v = std::f64::consts::FRAC_1_SQRT_2;
                e[(a, b)] = v;
                e[(b, a)] = v;
            }
            out.push(&j * e);
        }
    }
    out
}

/// Distinct rotation rates with multiplicities, descending.
fn grouped_rates(x: &ConeGenerator) -> Result<Vec<(f64, usize)>> {
    let nf = normal_form(x)?;
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for &t in &nf.thetas {
        match groups.last_mut() {
            Some((l, m)) if (*l - t).abs() <= 1e-8 * l.max(1.0) => {
                *l = (*l * *m as f64 + t) / (*m + 1) as f64;
                *m += 1;
            }
            _ => groups.push((t, 1)),
        }
    }
    Ok(groups)
}

fn in_lattice(t: f64, period: f64) -> bool {
    let r = t / period;
    r >= 0.5 && (r - r.round()).abs() <= 1e-9 * r.max(1.0)
}

/// Multiplicity of t > 0 as a conjugate instant, from the rotation rates.
pub fn closed_form_multiplicity(rates: &[(f64, usize)], t: f64) -> usize {
    let mut m = 0;
    for &(l, nl) in rates {
        if in_lattice(t, PI / l) {
            m += nl * nl + nl;
        }
    }
    for i in 0..rates.len() {
        for k in (i + 1)..rates.len() {
            let (l1, n1) = rates[i];
            let (l2, n2) = rates[k];
            if in_lattice(t, 2.0 * PI / (l1 + l2)) || in_lattice(t, 2.0 * PI / (l1 - l2).abs()) {
                m += 2 * n1 * n2;
            }
        }
    }
    m
}

/// All conjugate instants in (0, T] with their multiplicities.
pub fn conjugate_instants_closed_form(x: &ConeGenerator, t_end: f64) -> Result<ConjugateReport> {
    if !x.is_interior() {
        return Err(Error::Domain("generator must lie in the open cone".into()));
    }
    let rates = grouped_rates(x)?;
    let mut periods: Vec<f64> = rates.iter().map(|(l, _)| PI / l).collect();
    for i in 0..rates.len() {
        for k in (i + 1)..rates.len() {
            periods.push(2.0 * PI / (rates[i].0 + rates[k].0));
            periods.push(2.0 * PI / (rates[i].0 - rates[k].0).abs());
        }
    }
    let mut candidates: Vec<f64> = Vec::new();
    for p in periods {
        let mut k = 1.0;
        while k * p <= t_end * (1.0 + 1e-12) {
            candidates.push(k * p);
            k += 1.0;
        }
    }
    candidates.sort_by(|a, b| a.total_cmp(b));
    candidates.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * b.max(1.0));
    let instants: Vec<ConjugateInstant> = candidates
        .into_iter()
        .map(|t| ConjugateInstant {
            t,
            multiplicity: closed_form_multiplicity(&rates, t),
            source: InstantSource::ClosedForm,
        })
        .filter(|c| c.multiplicity > 0)
        .collect();
    let coindex = instants
        .iter()
        .filter(|c| c.t < t_end * (1.0 - 1e-9))
        .map(|c| c.multiplicity)
        .sum();
    Ok(ConjugateReport { instants, coindex })
}

/// Singular values of Z -> Y_Z(t) on the orthonormal basis of sp(2n), descending.
pub fn jacobi_map_singular_values(x: &ConeGenerator, t: f64) -> Vec<f64> {
    let n = x.n;
    let basis = sp_basis(n);
    let nodes = adjoint_nodes(&x.x, t);
    let dim = 2 * n;
    let mut map = DMatrix::<f64>::zeros(dim * dim, basis.len());
    for (c, z) in basis.iter().enumerate() {
        let mut y = DMatrix::<f64>::zeros(dim, dim);
        for (w, e, ei) in &nodes {
            y += (e * z * ei) * *w;
        }
        for (r, v) in y.iter().enumerate() {
            map[(r, c)] = *v;
        }
    }
    SVD::new(map, false, false).singular_values.iter().copied().collect()
}

/// Kernel dimension of Z -> Y_Z(t*) with relative singular-value threshold 1e-8.
pub fn conjugate_multiplicity_numeric(x: &ConeGenerator, t_star: f64) -> Result<usize> {
    if !(t_star > 0.0) {
        return Err(Error::Domain("t* must be positive".into()));
    }
    let sv = jacobi_map_singular_values(x, t_star);
    let top = sv[0];
    let mut kernel = 0;
    for &s in &sv {
        let r = s / top;
        if r <= 1e-8 {
            kernel += 1;
        } else if r <= 1e-6 {
            return Err(Error::RankAmbiguity(format!("relative singular value {r:.3e} near threshold")));
        }
    }
    Ok(kernel)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoindexReport {
    pub coindex: usize,
    /// Smallest positive eigenvalue above the threshold, if any.
    pub smallest_positive: Option<f64>,
    /// Threshold used, 1e-8 times the spectral radius of the form.
    pub pos_tol: f64,
    /// Set when an eigenvalue lies within +-pos_tol of 0.
    pub boundary_warning: bool,
}

/// Index form of the second variation of length_G along t -> e^{tX}, t in [0, T],
/// restricted to hat-function curves with values in sp_X(2n) vanishing at the
/// end points. Ordering: node-major, (i, a) -> i * d + a.
pub fn index_form_matrix(x: &ConeGenerator, t_end: f64, elements: usize) -> Result<DMatrix<f64>> {
    if !x.is_interior() {
        return Err(Error::Domain("generator must lie in the open cone".into()));
    }
    if elements < 4 {
        return Err(Error::Domain("need at least 4 elements".into()));
    }
    let n = x.n;
    let x_inv = x.x.clone().try_inverse().ok_or_else(|| Error::Domain("singular generator".into()))?;
    let full = sp_basis(n);
    // basis of sp_X(2n): kernel of B -> tr(X^{-1} B)
    let f = nalgebra::DVector::from_iterator(full.len(), full.iter().map(|b| (&x_inv * b).trace()));
    let f = &f / f.norm();
    let proj = DMatrix::identity(full.len(), full.len()) - &f * f.transpose();
    let eig = SymmetricEigen::new(proj);
    let mut cols: Vec<usize> = (0..full.len()).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
    cols.sort();
    let basis: Vec<DMatrix<f64>> = cols
        .iter()
        .map(|&c| {
            let mut b = DMatrix::zeros(2 * n, 2 * n);
            for (k, e) in full.iter().enumerate() {
                b += e * eig.eigenvectors[(k, c)];
            }
            b
        })
        .collect();
    let d = basis.len();
    let mut m1 = DMatrix::<f64>::zeros(d, d);
    let mut anti = DMatrix::<f64>::zeros(d, d);
    for a in 0..d {
        let xa = &x_inv * &basis[a];
        for b in 0..d {
            m1[(a, b)] = (&xa * &x_inv * &basis[b]).trace();
            anti[(a, b)] = (&basis[a] * &x_inv * &basis[b]).trace() - (&xa * &basis[b]).trace();
        }
    }
    let c = metric_g(x)? / (2 * n) as f64;
    let h = t_end / elements as f64;
    let nodes = elements - 1;
    let mut q = DMatrix::<f64>::zeros(nodes * d, nodes * d);
    for i in 0..nodes {
        for a in 0..d {
            for b in 0..d {
                q[(i * d + a, i * d + b)] = -c * (2.0 / h) * m1[(a, b)];
                if i + 1 < nodes {
                    // K_{i,i+1} = -1/h, C_{i,i+1} = 1/2, C_{i+1,i} = -1/2
                    q[(i * d + a, (i + 1) * d + b)] = -c * (-m1[(a, b)] / h + 0.5 * anti[(a, b)]);
                    q[((i + 1) * d + a, i * d + b)] = -c * (-m1[(a, b)] / h - 0.5 * anti[(a, b)]);
                }
            }
        }
    }
    Ok(q)
}

/// Number of positive eigenvalues of the discretized index form.
pub fn coindex_discretized(x: &ConeGenerator, t_end: f64, elements: usize) -> Result<CoindexReport> {
    let q = index_form_matrix(x, t_end, elements)?;
    let q = (&q + q.transpose()) * 0.5;
    let ev = SymmetricEigen::try_new(q, f64::EPSILON, 100_000)
        .ok_or_else(|| Error::Domain("eigensolver did not converge".into()))?
        .eigenvalues;
    let radius = ev.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let pos_tol = 1e-8 * radius;
    let positive: Vec<f64> = ev.iter().copied().filter(|&e| e > pos_tol).collect();
    Ok(CoindexReport {
        coindex: positive.len(),
        smallest_positive: positive.iter().copied().reduce(f64::min),
        pos_tol,
        boundary_warning: ev.iter().any(|e| e.abs() <= pos_tol),
    })
}

/// Closed-form co-index (ceil(T/pi) - 1)(n^2 + n) for X = J0.
pub fn standard_coindex(n: usize, t_end: f64) -> usize {
    let k = (t_end / PI).ceil() as usize;
    k.saturating_sub(1) * (n * n + n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_instants() {
        for n in 1..=3 {
            let x = ConeGenerator::new(j0(n)).unwrap();
            let rep = conjugate_instants_closed_form(&x, 3.5 * PI).unwrap();
            assert_eq!(rep.instants.len(), 3);
            for (k, c) in rep.instants.iter().enumerate() {
                assert!((c.t - (k + 1) as f64 * PI).abs() < 1e-12);
                assert_eq!(c.multiplicity, n * n + n);
            }
            assert_eq!(rep.coindex, standard_coindex(n, 3.5 * PI));
        }
    }

    #[test]
    fn two_rates_instants() {
        let x = ConeGenerator::from_thetas(&[2.0, 1.0]).unwrap();
        let rep = conjugate_instants_closed_form(&x, 3.0).unwrap();
        assert!((rep.instants[0].t - PI / 2.0).abs() < 1e-12);
        assert_eq!(rep.instants[0].multiplicity, 2);
        let rates = vec![(2.0, 1), (1.0, 1)];
        assert_eq!(closed_form_multiplicity(&rates, 2.0 * PI / 3.0), 2);
    }

    #[test]
    fn numeric_multiplicity_examples() {
        let x = ConeGenerator::new(j0(1)).unwrap();
        assert_eq!(conjugate_multiplicity_numeric(&x, PI).unwrap(), 2);
        assert_eq!(conjugate_multiplicity_numeric(&x, PI / 2.0).unwrap(), 0);
    }

    #[test]
    fn sp_basis_is_orthonormal() {
        let b = sp_basis(2);
        assert_eq!(b.len(), 10);
        for i in 0..b.len() {
            for k in 0..b.len() {
                let ip = b[i].dot(&b[k]);
                assert!((ip - if i == k { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn coindex_small_cases() {
        let x = ConeGenerator::new(j0(1)).unwrap();
        assert_eq!(coindex_discretized(&x, 2.5 * PI, 64).unwrap().coindex, 4);
        assert_eq!(coindex_discretized(&x, 0.9 * PI, 64).unwrap().coindex, 0);
    }

    #[test]
    fn index_form_is_symmetric() {
        let x = ConeGenerator::from_hessian(DMatrix::from_row_slice(4, 4, &[
            2.0, 0.3, 0.1, 0.0, 0.3, 1.0, 0.2, 0.1, 0.1, 0.2, 1.5, -0.3, 0.0, 0.1, -0.3, 1.2,
        ]))
        .unwrap();
        let q = index_form_matrix(&x, 4.0, 16).unwrap();
        assert!((&q - q.transpose()).norm() <= 1e-12 * q.norm());
    }
}
