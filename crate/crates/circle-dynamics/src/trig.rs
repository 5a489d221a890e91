//! Real trigonometric polynomials on the circle R/Z.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// p(x) = a0 + sum_j a_j cos(2 pi j x) + b_j sin(2 pi j x), j = 1..=k.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPolynomial {
    /// a[0..=k]
    pub a: Vec<f64>,
    /// b[0..=k]; b[0] is ignored and kept at zero.
    pub b: Vec<f64>,
}

impl TrigPolynomial {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Self {
        assert_eq!(a.len(), b.len(), "coefficient vectors must have equal length");
        assert!(!a.is_empty(), "need at least the constant term");
        let mut b = b;
        b[0] = 0.0;
        Self { a, b }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c], vec![0.0])
    }

    /// Nominal degree (length of the coefficient arrays minus one).
    pub fn k(&self) -> usize {
        self.a.len() - 1
    }

    /// Highest frequency with a nonzero coefficient.
    pub fn effective_degree(&self) -> usize {
        (0..=self.k()).rev().find(|&j| self.a[j] != 0.0 || self.b[j] != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (s1, c1) = (2.0 * PI * x).sin_cos();
        let (mut c, mut s) = (1.0, 0.0);
        let mut acc = self.a[0];
        for j in 1..=self.k() {
            let cn = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = cn;
            acc += self.a[j] * c + self.b[j] * s;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let k = self.k();
        let mut a = vec![0.0; k + 1];
        let mut b = vec![0.0; k + 1];
        for j in 1..=k {
            let w = 2.0 * PI * j as f64;
            a[j] = w * self.b[j];
            b[j] = -w * self.a[j];
        }
        Self { a, b }
    }

    /// Integral over one period.
    pub fn mean(&self) -> f64 {
        self.a[0]
    }

    /// Complex coefficients r_m, m = -k..=k, of p = sum r_m e^{2 pi i m x}.
    pub fn complex_coefficients(&self) -> Vec<Complex64> {
        let k = self.k();
        let mut r = vec![Complex64::new(0.0, 0.0); 2 * k + 1];
        r[k] = Complex64::new(self.a[0], 0.0);
        for j in 1..=k {
            let c = Complex64::new(self.a[j], -self.b[j]) * 0.5;
            r[k + j] = c;
            r[k - j] = c.conj();
        }
        r
    }

    pub fn from_complex_coefficients(r: &[Complex64]) -> Self {
        assert!(r.len() % 2 == 1, "need 2k+1 coefficients");
        let k = r.len() / 2;
        let mut a = vec![0.0; k + 1];
        let mut b = vec![0.0; k + 1];
        a[0] = r[k].re;
        for j in 1..=k {
            a[j] = 2.0 * r[k + j].re;
            b[j] = -2.0 * r[k + j].im;
        }
        Self { a, b }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { a: self.a.iter().map(|x| x * s).collect(), b: self.b.iter().map(|x| x * s).collect() }
    }

    /// Sum of absolute coefficients, an upper bound for the sup norm.
    pub fn coefficient_l1(&self) -> f64 {
        self.a.iter().chain(&self.b).map(|x| x.abs()).sum()
    }
}

/// |sum_{j=0}^k c_j e^{2 pi i j x}|^2 as a trigonometric polynomial of degree k.
pub fn fejer_riesz(c: &[Complex64]) -> TrigPolynomial {
    let k = c.len().saturating_sub(1);
    let mut r = vec![Complex64::new(0.0, 0.0); 2 * k + 1];
    for m in 0..=k {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..=(k - m) {
            acc += c[j + m] * c[j].conj();
        }
        r[k + m] = acc;
        r[k - m] = acc.conj();
    }
    TrigPolynomial::from_complex_coefficients(&r)
}

/// Random Fejer-Riesz square of degree k. Draw order: (re, im) of c_0, ..., c_k,
/// each standard normal.
pub fn random_fejer_riesz<R: Rng + ?Sized>(k: usize, rng: &mut R) -> TrigPolynomial {
    let c: Vec<Complex64> = (0..=k)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect();
    fejer_riesz(&c)
}

/// Random positive polynomial of degree k. Draw order: (a_j, b_j) for j = 1..=k, each U(-1, 1),
/// then a0 - sum |a_j| + |b_j| ~ U(0.1, 1).
pub fn random_positive_trig<R: Rng + ?Sized>(k: usize, rng: &mut R) -> TrigPolynomial {
    let mut a = vec![0.0f64; k + 1];
    let mut b = vec![0.0f64; k + 1];
    for j in 1..=k {
        a[j] = rng.random_range(-1.0..1.0);
        b[j] = rng.random_range(-1.0..1.0);
    }
    let floor: f64 = a.iter().chain(&b).map(|x| x.abs()).sum();
    a[0] = floor + rng.random_range(0.1..1.0);
    TrigPolynomial::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn periodic_and_derivative() {
        let p = TrigPolynomial::new(vec![1.0, 0.3, -0.2], vec![0.0, 0.5, 0.1]);
        for &x in &[0.0, 0.13, 0.77] {
            assert!((p.eval(x) - p.eval(x + 1.0)).abs() < 1e-13);
            let h = 1e-5;
            let fd = (p.eval(x + h) - p.eval(x - h)) / (2.0 * h);
            assert!((fd - p.derivative().eval(x)).abs() < 1e-6);
        }
        let q = TrigPolynomial::from_complex_coefficients(&p.complex_coefficients());
        assert_eq!(p, q);
    }

    #[test]
    fn fejer_riesz_matches_modulus() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let c: Vec<Complex64> = (0..4).map(|j| Complex64::new(j as f64 - 1.5, 0.3 * j as f64)).collect();
        let p = fejer_riesz(&c);
        for &x in &[0.0, 0.21, 0.5, 0.93] {
            let z: Complex64 = c.iter().enumerate().map(|(j, cj)| cj * Complex64::from_polar(1.0, 2.0 * PI * j as f64 * x)).sum();
            assert!((p.eval(x) - z.norm_sqr()).abs() < 1e-12);
        }
        let r = random_fejer_riesz(5, &mut rng);
        assert_eq!(r.k(), 5);
    }
}
