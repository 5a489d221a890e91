//! The metric V(H) = (int_0^1 dx / H)^{-1} and the length it induces.

use symplectic_core::quadrature::composite_gauss;

use crate::error::{Error, Result};
use crate::hamiltonian::CircleHamiltonianPath;

const MIN_POINTS: usize = 64;
const MAX_POINTS: usize = 1 << 21;
const REL_TOL: f64 = 1e-14;

/// Compensated summation; the trapezoid sums run over up to millions of terms.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Periodic trapezoid rule for int_0^1 dx / f, doubled until it settles.
pub fn inverse_mean(f: &dyn Fn(f64) -> f64) -> Result<f64> {
    inverse_mean_resolved(f, MIN_POINTS)
}

/// As [`inverse_mean`], starting from at least `min_points` nodes; features of f narrower
/// than the starting grid can otherwise go unseen by two consecutive levels.
pub fn inverse_mean_resolved(f: &dyn Fn(f64) -> f64, min_points: usize) -> Result<f64> {
    let mut n = min_points.max(MIN_POINTS).next_power_of_two().min(MAX_POINTS / 2);
    let mut sum = Neumaier::default();
    let mut min = f64::INFINITY;
    for i in 0..n {
        let v = f(i as f64 / n as f64);
        min = min.min(v);
        sum.add(1.0 / v);
    }
    if !(min > 0.0) {
        return Err(Error::NonPositive(min));
    }
    let mut prev = sum.value() / n as f64;
    while n < MAX_POINTS {
        // the new nodes are the midpoints of the current grid
        for i in 0..n {
            let v = f((i as f64 + 0.5) / n as f64);
            min = min.min(v);
            sum.add(1.0 / v);
        }
        if !(min > 0.0) {
            return Err(Error::NonPositive(min));
        }
        n *= 2;
        let cur = sum.value() / n as f64;
        if (cur - prev).abs() <= REL_TOL * cur.abs() {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Resolution("periodic quadrature did not settle".into()))
}

/// V of a positive 1-periodic function.
pub fn metric_v(f: &dyn Fn(f64) -> f64) -> Result<f64> {
    Ok(1.0 / inverse_mean(f)?)
}

pub fn metric_v_resolved(f: &dyn Fn(f64) -> f64, min_points: usize) -> Result<f64> {
    Ok(1.0 / inverse_mean_resolved(f, min_points)?)
}

/// V of the time-t slice of a path.
pub fn metric_v_slice(h: &CircleHamiltonianPath, t: f64) -> Result<f64> {
    match h.trig_slice(t) {
        Some(p) => metric_v(&|x| p.eval(x)),
        None => metric_v_resolved(&|x| h.eval(t, x), h.min_points),
    }
}

pub const DEFAULT_TIME_PANELS: usize = 16;

/// int_0^T V(H(t, .)) dt by composite 8-point Gauss-Legendre in time.
pub fn length_v(h: &CircleHamiltonianPath) -> Result<f64> {
    length_v_with(h, DEFAULT_TIME_PANELS)
}

pub fn length_v_with(h: &CircleHamiltonianPath, panels: usize) -> Result<f64> {
    if h.autonomous {
        return Ok(h.t_end * metric_v_slice(h, 0.0)?);
    }
    let (nodes, weights) = composite_gauss(0.0, h.t_end, panels.max(1), 8);
    let mut total = 0.0;
    for (t, w) in nodes.iter().zip(&weights) {
        total += w * metric_v_slice(h, *t)?;
    }
    Ok(total)
}

/// int_0^1 H(t, x) dx, for the Jensen comparison V <= mean.
pub fn mean_value(f: &dyn Fn(f64) -> f64, n: usize) -> f64 {
    (0..n).map(|i| f(i as f64 / n as f64)).sum::<f64>() / n as f64
}
