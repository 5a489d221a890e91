//! Conjugate instants of autonomous positive flows on the circle.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

use symplectic_core::quadrature::gauss_legendre;

use crate::error::{Error, Result};
use crate::flow::{flow_points, FlowMethod};
use crate::hamiltonian::CircleHamiltonianPath;
use crate::lift::CircleLift;
use crate::metric::metric_v_slice;

pub const DEFAULT_MAX_DENOMINATOR: u64 = 64;
pub const DEFAULT_KERNEL_MODES: usize = 32;

/// t = (p / q) / V; every such instant has infinite multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleConjugateInstant {
    pub t: f64,
    pub p: u64,
    pub q: u64,
    pub infinite_multiplicity: bool,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// All t = (p/q)/v in (0, horizon] with q <= q_max, reduced and sorted.
pub fn rational_instants(v: f64, horizon: f64, q_max: u64) -> Vec<CircleConjugateInstant> {
    let mut out = Vec::new();
    let bound = horizon * v;
    for q in 1..=q_max {
        let p_max = (bound * q as f64 + 1e-9).floor() as u64;
        for p in 1..=p_max {
            if gcd(p, q) == 1 {
                out.push(CircleConjugateInstant { t: p as f64 / q as f64 / v, p, q, infinite_multiplicity: true });
            }
        }
    }
    out.sort_by(|a, b| (a.p * b.q).cmp(&(b.p * a.q)));
    out
}

pub fn conjugate_instants_circle(h: &CircleHamiltonianPath, horizon: f64, q_max: u64) -> Result<Vec<CircleConjugateInstant>> {
    if !h.autonomous {
        return Err(Error::Domain("conjugate instants need an autonomous Hamiltonian".into()));
    }
    let v = metric_v_slice(h, 0.0)?;
    Ok(rational_instants(v, horizon, q_max))
}

/// g(x) = V int_0^x dy / h(y); it conjugates the flow of h to translation by V t.
pub fn conjugating_diffeo(h: &dyn Fn(f64) -> f64, grid: usize) -> Result<CircleLift> {
    let (nodes, weights) = gauss_legendre(12);
    let cell = 1.0 / grid as f64;
    let mut cum = vec![0.0; grid + 1];
    for i in 0..grid {
        let a = i as f64 * cell;
        let mut s = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            let hv = h(a + 0.5 * cell * (x + 1.0));
            if !(hv > 0.0) {
                return Err(Error::NonPositive(hv));
            }
            s += 0.5 * cell * w / hv;
        }
        cum[i + 1] = cum[i] + s;
    }
    let v = 1.0 / cum[grid];
    CircleLift::new(cum.iter().map(|c| c * v).collect(), 1e-12)
}

/// max_x |phi^t(x) - g^{-1}(g(x) + V t)| on a uniform sample of x.
pub fn conjugation_defect(h: &CircleHamiltonianPath, t: f64, samples: usize) -> Result<f64> {
    if !h.autonomous {
        return Err(Error::Domain("conjugation needs an autonomous Hamiltonian".into()));
    }
    let hh = h.clone();
    let g = conjugating_diffeo(&move |x| hh.eval(0.0, x), 512)?;
    let v = metric_v_slice(h, 0.0)?;
    let xs: Vec<f64> = (0..samples).map(|i| i as f64 / samples as f64).collect();
    let phi = flow_points(h, 0.0, t, &xs, &FlowMethod::Rk4 { steps: 4096 })?;
    let mut worst: f64 = 0.0;
    for (x, y) in xs.iter().zip(&phi) {
        let target = g.eval(*x) + v * t;
        // invert g by Newton with g' = V / h
        let mut z = *y;
        for _ in 0..50 {
            let step = (g.eval(z) - target) * h.eval(0.0, z) / v;
            z -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        worst = worst.max((z - y).abs());
    }
    Ok(worst)
}

/// Relative smallest singular value of f -> (1/t) int_0^t f(phi^s(x)) ds, restricted to
/// the pulled-back Fourier modes e^{2 pi i j g(x)}, |j| <= modes, and sampled at 4 modes + 4 points.
/// A value near zero signals a conjugate instant.
pub fn fourier_kernel_gap(h: &CircleHamiltonianPath, t: f64, modes: usize) -> Result<f64> {
    if !h.autonomous || !(t > 0.0) {
        return Err(Error::Domain("kernel test needs an autonomous Hamiltonian and t > 0".into()));
    }
    let hh = h.clone();
    let g = conjugating_diffeo(&move |x| hh.eval(0.0, x), 512)?;
    let samples = 4 * modes + 4;
    let cols = 2 * modes + 1;
    let steps = 1024;
    let dt = t / steps as f64;
    let mut xs: Vec<f64> = (0..samples).map(|i| i as f64 / samples as f64).collect();
    let mut a = DMatrix::<Complex64>::zeros(samples, cols);
    // composite Simpson over the RK4 nodes
    for s in 0..=steps {
        if s > 0 {
            xs = flow_points(h, (s - 1) as f64 * dt, s as f64 * dt, &xs, &FlowMethod::Rk4 { steps: 1 })?;
        }
        let w = if s == 0 || s == steps { 1.0 } else if s % 2 == 1 { 4.0 } else { 2.0 } * dt / 3.0 / t;
        for (i, x) in xs.iter().enumerate() {
            let base = Complex64::from_polar(1.0, 2.0 * PI * g.eval(*x));
            let mut e = base.powi(-(modes as i32));
            for j in 0..cols {
                a[(i, j)] += e * w;
                e *= base;
            }
        }
    }
    let sv = a.singular_values();
    let max = sv.max();
    Ok(sv.min() / max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_speed_instants_are_rationals() {
        let list = rational_instants(1.0, 2.5, 64);
        assert!(list.iter().all(|c| c.t <= 2.5 + 1e-12 && c.q <= 64));
        assert!(list.windows(2).all(|w| w[0].t < w[1].t));
        assert_eq!(list.iter().filter(|c| c.q == 1).count(), 2);
        assert!(list.iter().any(|c| c.p == 5 && c.q == 2));
        // count reduced fractions p/q in (0, 2.5] directly
        let mut count = 0;
        for q in 1..=64u64 {
            for p in 1..=(5 * q / 2) {
                if gcd(p, q) == 1 {
                    count += 1;
                }
            }
        }
        assert_eq!(list.len(), count);
    }

    #[test]
    fn conjugation_reduces_to_translation() {
        let h = CircleHamiltonianPath::autonomous(1.0, |x| 1.2 + 0.5 * (2.0 * PI * x).sin() + 0.2 * (4.0 * PI * x).cos());
        assert!(conjugation_defect(&h, 0.9, 32).unwrap() < 1e-8);
    }

    #[test]
    fn kernel_appears_exactly_at_rational_instants() {
        let h = CircleHamiltonianPath::autonomous(3.0, |x| 1.5 + 0.4 * (2.0 * PI * x).cos());
        let v = metric_v_slice(&h, 0.0).unwrap();
        let rational = fourier_kernel_gap(&h, 0.75 / v, DEFAULT_KERNEL_MODES).unwrap();
        let irrational = fourier_kernel_gap(&h, std::f64::consts::FRAC_1_SQRT_2 / v, DEFAULT_KERNEL_MODES).unwrap();
        assert!(rational < 1e-6, "{rational}");
        assert!(irrational > 1e-6, "{irrational}");
    }
}
