//! int_0^1 |p'| <= 4k int_0^1 p for nonnegative trigonometric polynomials of degree k.

use nalgebra::DMatrix;
use symplectic_core::linalg::complex_eigenvalues;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::trig::TrigPolynomial;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NazarovReport {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    /// Minimum of p, attained at a critical point.
    pub min_value: f64,
}

/// Relative tolerance for the nonnegativity certificate.
pub const NEG_TOL: f64 = 1e-9;

/// Critical points of p in [0, 1), sorted. Roots of p' come from the companion matrix of
/// z^k p'(x), z = e^{2 pi i x}, polished by Newton steps; spurious near-circle roots are
/// harmless for the total variation.
pub fn critical_points(p: &TrigPolynomial) -> Result<Vec<f64>> {
    let k = p.effective_degree();
    if k == 0 {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let ddp = dp.derivative();
    let r = dp.complex_coefficients();
    let base = dp.k();
    // coefficients of q(z) = sum_{m=-k}^{k} d_m z^{m+k}
    let coef: Vec<Complex64> = (0..=2 * k).map(|i| r[base + i - k]).collect();
    let lead = coef[2 * k];
    let deg = 2 * k;
    let mut comp = DMatrix::<Complex64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -coef[i] / lead;
    }
    let eig = complex_eigenvalues(&comp)?;
    let mut xs = Vec::new();
    for z in eig.iter() {
        if (z.norm() - 1.0).abs() > 1e-3 {
            continue;
        }
        let mut x = z.arg() / (2.0 * PI);
        for _ in 0..8 {
            let d2 = ddp.eval(x);
            if d2 == 0.0 {
                break;
            }
            let step = dp.eval(x) / d2;
            if step.abs() > 1e-3 {
                break;
            }
            x -= step;
        }
        xs.push(x.rem_euclid(1.0));
    }
    xs.sort_by(|a, b| a.total_cmp(b));
    Ok(xs)
}

/// Total variation over one period: sum over consecutive critical points of |p(c_{i+1}) - p(c_i)|.
pub fn total_variation(p: &TrigPolynomial, crit: &[f64]) -> f64 {
    if crit.is_empty() {
        return 0.0;
    }
    let vals: Vec<f64> = crit.iter().map(|&x| p.eval(x)).collect();
    let n = vals.len();
    (0..n).map(|i| (vals[(i + 1) % n] - vals[i]).abs()).sum()
}

pub fn nazarov_check(p: &TrigPolynomial) -> Result<NazarovReport> {
    let k = p.effective_degree();
    let crit = critical_points(p)?;
    let min_value = if crit.is_empty() { p.a[0] } else { crit.iter().map(|&x| p.eval(x)).fold(f64::INFINITY, f64::min) };
    let scale = p.coefficient_l1().max(f64::MIN_POSITIVE);
    if min_value < -NEG_TOL * scale {
        return Err(Error::Domain(format!("polynomial is negative: minimum {min_value:e}")));
    }
    let lhs = total_variation(p, &crit);
    let rhs = 4.0 * k as f64 * p.mean();
    Ok(NazarovReport { lhs, rhs, pass: lhs <= rhs * (1.0 + 1e-10), min_value })
}

/// 1 + cos(2 pi k x), the equality case.
pub fn extremal(k: usize) -> TrigPolynomial {
    let mut a = vec![0.0; k + 1];
    a[0] = 1.0;
    a[k] += 1.0;
    TrigPolynomial::new(a, vec![0.0; k + 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig::random_fejer_riesz;
    use rand::SeedableRng;

    #[test]
    fn extremal_equality() {
        for k in 1..=8 {
            let r = nazarov_check(&extremal(k)).unwrap();
            assert!((r.lhs - 4.0 * k as f64).abs() < 1e-10, "k={k} {r:?}");
            assert!((r.rhs - 4.0 * k as f64).abs() < 1e-15);
            assert!(r.pass);
        }
        let one = nazarov_check(&TrigPolynomial::constant(1.0)).unwrap();
        assert_eq!(one.lhs, 0.0);
    }

    #[test]
    fn total_variation_matches_quadrature() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for k in 1..=6 {
            let p = random_fejer_riesz(k, &mut rng);
            let r = nazarov_check(&p).unwrap();
            let dp = p.derivative();
            let n = 200_000;
            let quad: f64 = (0..n).map(|i| dp.eval((i as f64 + 0.5) / n as f64).abs()).sum::<f64>() / n as f64;
            assert!((quad - r.lhs).abs() < 1e-6 * (1.0 + r.lhs), "k={k}: {quad} vs {}", r.lhs);
            assert!(r.pass);
        }
    }

    #[test]
    fn negative_polynomial_rejected() {
        let p = TrigPolynomial::new(vec![0.1, 1.0], vec![0.0, 0.0]);
        assert!(matches!(nazarov_check(&p), Err(Error::Domain(_))));
    }
}
