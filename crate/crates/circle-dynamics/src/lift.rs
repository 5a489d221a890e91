//! Lifts of circle diffeomorphisms sampled on a uniform grid.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Samples phi(i / N), i = 0..=N, of a lift with phi(x + 1) = phi(x) + 1.
/// Off-grid values use trigonometric interpolation of phi(x) - x.
#[derive(Clone, Debug)]
pub struct CircleLift {
    pub samples: Vec<f64>,
    cos_coef: Vec<f64>,
    sin_coef: Vec<f64>,
}

impl CircleLift {
    /// Validates strict monotonicity and phi(1) - phi(0) = 1 within tol.
    pub fn new(samples: Vec<f64>, tol: f64) -> Result<Self> {
        let n = samples.len().saturating_sub(1);
        if n < 2 {
            return Err(Error::Domain("a lift needs at least three samples".into()));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("non-finite lift sample".into()));
        }
        if let Some(i) = (0..n).find(|&i| samples[i + 1] <= samples[i]) {
            return Err(Error::Resolution(format!("lift not increasing at grid index {i}")));
        }
        let defect = (samples[n] - samples[0] - 1.0).abs();
        if defect > tol {
            return Err(Error::Resolution(format!("lift periodicity defect {defect:e}")));
        }
        let u: Vec<f64> = (0..n).map(|i| samples[i] - i as f64 / n as f64).collect();
        let (cos_coef, sin_coef) = real_dft(&u);
        Ok(Self { samples, cos_coef, sin_coef })
    }

    pub fn identity(n: usize) -> Self {
        Self::translation(0.0, n)
    }

    pub fn translation(c: f64, n: usize) -> Self {
        Self::new((0..=n).map(|i| i as f64 / n as f64 + c).collect(), 1e-12).expect("translation is a valid lift")
    }

    pub fn grid_size(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.grid_size();
        (0..=n).map(|i| i as f64 / n as f64).collect()
    }

    /// phi(x) for any real x.
    pub fn eval(&self, x: f64) -> f64 {
        let (s1, c1) = (2.0 * PI * x).sin_cos();
        let (mut c, mut s) = (1.0, 0.0);
        let mut acc = self.cos_coef[0];
        for j in 1..self.cos_coef.len() {
            let cn = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = cn;
            acc += self.cos_coef[j] * c + self.sin_coef[j] * s;
        }
        x + acc
    }

    /// Grid displacements phi(x_i) - x_i, i = 0..N-1.
    pub fn displacements(&self) -> Vec<f64> {
        let n = self.grid_size();
        (0..n).map(|i| self.samples[i] - i as f64 / n as f64).collect()
    }

    /// Max of phi(x) - x on a grid refined by `refine` through interpolation.
    pub fn max_displacement(&self, refine: usize) -> f64 {
        let m = self.grid_size() * refine.max(1);
        (0..m).map(|i| {
            let x = i as f64 / m as f64;
            self.eval(x) - x
        })
        .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_displacement(&self, refine: usize) -> f64 {
        let m = self.grid_size() * refine.max(1);
        (0..m).map(|i| {
            let x = i as f64 / m as f64;
            self.eval(x) - x
        })
        .fold(f64::INFINITY, f64::min)
    }

    /// Integral of phi(x) - x over one period (trapezoid, exact for the interpolant).
    pub fn mean_displacement(&self) -> f64 {
        self.cos_coef[0]
    }
}

/// Coefficients of the real trigonometric interpolant of periodic samples.
fn real_dft(u: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = u.len();
    let half = n / 2;
    let mut a = vec![0.0; half + 1];
    let mut b = vec![0.0; half + 1];
    for j in 0..=half {
        let (mut sa, mut sb) = (0.0, 0.0);
        for (i, ui) in u.iter().enumerate() {
            let ang = 2.0 * PI * ((j * i) % n) as f64 / n as f64;
            sa += ui * ang.cos();
            sb += ui * ang.sin();
        }
        let scale = if j == 0 || (n % 2 == 0 && j == half) { 1.0 } else { 2.0 };
        a[j] = scale * sa / n as f64;
        b[j] = scale * sb / n as f64;
    }
    if n % 2 == 0 {
        // the Nyquist sine term vanishes on the grid; drop it to keep the interpolant real and minimal
        b[half] = 0.0;
    }
    (a, b)
}

/// Integral over [0, 1] of phi(x) - x.
pub fn diff1_time_function(phi: &CircleLift) -> f64 {
    phi.mean_displacement()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_reproduces_smooth_lift() {
        let f = |x: f64| x + 0.1 * (2.0 * PI * x).sin() + 0.3 + 0.02 * (6.0 * PI * x).cos();
        let n = 32;
        let lift = CircleLift::new((0..=n).map(|i| f(i as f64 / n as f64)).collect(), 1e-12).unwrap();
        for &x in &[0.013, 0.5, 1.77, -2.3] {
            assert!((lift.eval(x) - f(x)).abs() < 1e-13);
        }
        assert!((lift.mean_displacement() - 0.3).abs() < 1e-14);
    }

    #[test]
    fn time_function_trivial_cases() {
        assert_eq!(diff1_time_function(&CircleLift::identity(16)), 0.0);
        assert!((diff1_time_function(&CircleLift::translation(0.4, 16)) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_lifts() {
        assert!(CircleLift::new(vec![0.0, 0.6, 0.5, 1.0], 1e-9).is_err());
        assert!(CircleLift::new(vec![0.0, 0.3, 0.6, 1.2], 1e-9).is_err());
    }
}
