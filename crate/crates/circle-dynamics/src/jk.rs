//! The embedding of quadratic Hamiltonians on R^2 into 1-periodic Hamiltonians.

use nalgebra::DMatrix;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::trig::TrigPolynomial;

/// H_k(x) = (1 / (k pi)) S z . z with z = (cos k pi x, sin k pi x).
pub fn jk_embed(s: &DMatrix<f64>, k: usize) -> Result<TrigPolynomial> {
    if s.shape() != (2, 2) || k == 0 {
        return Err(Error::Domain("need a 2x2 symmetric matrix and k >= 1".into()));
    }
    if (s[(0, 1)] - s[(1, 0)]).abs() > 1e-12 * (1.0 + s.amax()) {
        return Err(Error::Domain("matrix is not symmetric".into()));
    }
    let (a, b, c) = (s[(0, 0)], 0.5 * (s[(0, 1)] + s[(1, 0)]), s[(1, 1)]);
    let scale = 1.0 / (k as f64 * PI);
    let mut ca = vec![0.0; k + 1];
    let mut cb = vec![0.0; k + 1];
    ca[0] = scale * 0.5 * (a + c);
    ca[k] = scale * 0.5 * (a - c);
    cb[k] = scale * b;
    Ok(TrigPolynomial::new(ca, cb))
}

/// Direct evaluation of the defining formula, for cross-checks.
pub fn jk_direct(s: &DMatrix<f64>, k: usize, x: f64) -> f64 {
    let (sn, cs) = (k as f64 * PI * x).sin_cos();
    let z = [cs, sn];
    let mut acc = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            acc += s[(i, j)] * z[i] * z[j];
        }
    }
    acc / (k as f64 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::metric_v;

    #[test]
    fn scalar_and_diagonal_cases() {
        let h = jk_embed(&(DMatrix::identity(2, 2) * 1.3), 2).unwrap();
        assert!((metric_v(&|x| h.eval(x)).unwrap() - 1.3 / (2.0 * PI)).abs() < 1e-14);
        let s = DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 0.5]);
        for k in 1..=4 {
            let h = jk_embed(&s, k).unwrap();
            let v = metric_v(&|x| h.eval(x)).unwrap();
            assert!((v - 1.5f64.sqrt() / (k as f64 * PI)).abs() < 1e-12);
        }
    }

    #[test]
    fn harmonic_content() {
        let s = DMatrix::from_row_slice(2, 2, &[2.0, 0.7, 0.7, 0.4]);
        for k in 1..=5 {
            let h = jk_embed(&s, k).unwrap();
            // DFT of direct samples: only frequencies 0 and k may appear
            let n = 64;
            for j in 0..=20 {
                let (mut re, mut im) = (0.0, 0.0);
                for i in 0..n {
                    let x = i as f64 / n as f64;
                    let v = jk_direct(&s, k, x);
                    re += v * (2.0 * PI * j as f64 * x).cos() / n as f64;
                    im += v * (2.0 * PI * j as f64 * x).sin() / n as f64;
                }
                if j != 0 && j != k {
                    assert!(re.abs() < 1e-12 && im.abs() < 1e-12, "k={k} j={j}");
                }
            }
            for &x in &[0.0, 0.31, 0.77] {
                assert!((h.eval(x) - jk_direct(&s, k, x)).abs() < 1e-13);
            }
        }
    }
}
