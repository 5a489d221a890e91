//! Flows of time-dependent Hamiltonians: d/dt phi^t = H(t, phi^t), phi^0 = id.

use crate::error::{Error, Result};
use crate::hamiltonian::CircleHamiltonianPath;
use crate::lift::CircleLift;

pub const DEFAULT_GRID: usize = 256;
pub const DEFAULT_STEPS: usize = 2048;
/// Tolerance on phi(1) - phi(0) = 1 for a computed lift.
pub const LIFT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FlowMethod {
    /// Classical fourth-order Runge-Kutta with a fixed number of steps over the whole interval.
    Rk4 { steps: usize },
    /// Dormand-Prince 5(4) with per-point step control; no step moves a point by more than
    /// max_dx, so narrow features of H cannot be stepped over.
    Adaptive { tol: f64, max_dx: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowOptions {
    pub grid: usize,
    pub method: FlowMethod,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self { grid: DEFAULT_GRID, method: FlowMethod::Rk4 { steps: DEFAULT_STEPS } }
    }
}

pub fn flow(h: &CircleHamiltonianPath, t: f64) -> Result<CircleLift> {
    flow_with(h, t, &FlowOptions::default())
}

pub fn flow_with(h: &CircleHamiltonianPath, t: f64, opts: &FlowOptions) -> Result<CircleLift> {
    Ok(flow_times(h, &[t], opts)?.pop().expect("one time requested"))
}

/// Lifts phi^t for each requested time, sharing one integration. Times must be
/// nondecreasing and nonnegative.
pub fn flow_times(h: &CircleHamiltonianPath, times: &[f64], opts: &FlowOptions) -> Result<Vec<CircleLift>> {
    if opts.grid < 2 {
        return Err(Error::Domain("flow grid needs at least two cells".into()));
    }
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) || times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("flow times must be finite, nonnegative and nondecreasing".into()));
    }
    let n = opts.grid;
    let mut xs: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    let t_last = times.last().copied().unwrap_or(0.0);
    let mut out = Vec::with_capacity(times.len());
    let mut t_now = 0.0;
    for &t in times {
        if t > t_now {
            let method = match opts.method {
                FlowMethod::Rk4 { steps } => {
                    let share = ((t - t_now) / t_last * steps as f64).ceil() as usize;
                    FlowMethod::Rk4 { steps: share.max(1) }
                }
                m => m,
            };
            xs = flow_points(h, t_now, t, &xs, &method)?;
            t_now = t;
        }
        out.push(CircleLift::new(xs.clone(), LIFT_TOL)?);
    }
    Ok(out)
}

/// Transport the points xs from time t0 to time t1 (t1 < t0 integrates backward).
pub fn flow_points(h: &CircleHamiltonianPath, t0: f64, t1: f64, xs: &[f64], method: &FlowMethod) -> Result<Vec<f64>> {
    match *method {
        FlowMethod::Rk4 { steps } => Ok(rk4(h, t0, t1, xs, steps.max(1))),
        FlowMethod::Adaptive { tol, max_dx } => xs.iter().map(|&x| dopri(h, t0, t1, x, tol, max_dx)).collect(),
    }
}

fn rk4(h: &CircleHamiltonianPath, t0: f64, t1: f64, xs: &[f64], steps: usize) -> Vec<f64> {
    let m = xs.len();
    let dt = (t1 - t0) / steps as f64;
    let mut y = xs.to_vec();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; m], vec![0.0; m], vec![0.0; m], vec![0.0; m]);
    let mut tmp = vec![0.0; m];
    for s in 0..steps {
        let t = t0 + s as f64 * dt;
        h.eval_slice(t, &y, &mut k1);
        for i in 0..m {
            tmp[i] = y[i] + 0.5 * dt * k1[i];
        }
        h.eval_slice(t + 0.5 * dt, &tmp, &mut k2);
        for i in 0..m {
            tmp[i] = y[i] + 0.5 * dt * k2[i];
        }
        h.eval_slice(t + 0.5 * dt, &tmp, &mut k3);
        for i in 0..m {
            tmp[i] = y[i] + dt * k3[i];
        }
        h.eval_slice(t + dt, &tmp, &mut k4);
        for i in 0..m {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    y
}

const MAX_ADAPTIVE_STEPS: usize = 10_000_000;

fn dopri(h: &CircleHamiltonianPath, t0: f64, t1: f64, x0: f64, tol: f64, max_dx: f64) -> Result<f64> {
    const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
    const A: [[f64; 6]; 7] = [
        [0.0; 6],
        [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const E: [f64; 7] = [
        35.0 / 384.0 - 5179.0 / 57600.0,
        0.0,
        500.0 / 1113.0 - 7571.0 / 16695.0,
        125.0 / 192.0 - 393.0 / 640.0,
        -2187.0 / 6784.0 + 92097.0 / 339200.0,
        11.0 / 84.0 - 187.0 / 2100.0,
        -1.0 / 40.0,
    ];
    let span = t1 - t0;
    if span == 0.0 {
        return Ok(x0);
    }
    let dir = span.signum();
    let mut t = t0;
    let mut y = x0;
    let mut dt = dir * (span.abs() / 64.0).min(1e-2);
    let mut k = [0.0; 7];
    k[0] = h.eval(t, y);
    for _ in 0..MAX_ADAPTIVE_STEPS {
        if (t1 - t) * dir <= 0.0 {
            return Ok(y);
        }
        let cap = max_dx / k[0].abs().max(f64::MIN_POSITIVE);
        if dt.abs() > cap {
            dt = dir * cap;
        }
        if (t + dt - t1) * dir > 0.0 {
            dt = t1 - t;
        }
        for s in 1..7 {
            let ys = y + dt * (0..s).map(|j| A[s][j] * k[j]).sum::<f64>();
            k[s] = h.eval(t + C[s] * dt, ys);
        }
        let y_new = y + dt * (0..6).map(|j| A[6][j] * k[j]).sum::<f64>();
        let err = (dt * (0..7).map(|j| E[j] * k[j]).sum::<f64>()).abs();
        if err <= tol || dt.abs() < 1e-14 {
            t += dt;
            y = y_new;
            k[0] = k[6];
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * (tol / err).powf(0.2)).clamp(0.2, 5.0) };
        dt *= factor;
    }
    Err(Error::Resolution("adaptive flow exceeded its step budget".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_flow_is_translation() {
        let h = CircleHamiltonianPath::constant(0.7, 1.0);
        let phi = flow(&h, 1.0).unwrap();
        for (i, p) in phi.samples.iter().enumerate() {
            assert!((p - i as f64 / 256.0 - 0.7).abs() < 1e-11);
        }
    }

    #[test]
    fn exit_time_identity() {
        let hf = |x: f64| 1.5 + (2.0 * PI * x).cos() * 0.8;
        let h = CircleHamiltonianPath::autonomous(1.0, hf);
        let t = 0.8;
        let phi = flow(&h, t).unwrap();
        let (nodes, weights) = symplectic_core::quadrature::gauss_legendre(40);
        for i in (0..256).step_by(17) {
            let x = i as f64 / 256.0;
            let y = phi.samples[i];
            let integral: f64 = nodes
                .iter()
                .zip(&weights)
                .map(|(s, w)| {
                    let u = 0.5 * (x + y) + 0.5 * (y - x) * s;
                    0.5 * (y - x) * w / hf(u)
                })
                .sum();
            assert!((integral - t).abs() < 1e-8, "{integral}");
        }
    }

    #[test]
    fn backward_round_trip_and_adaptive_agree() {
        let h = CircleHamiltonianPath::from_fn(1.0, |t, x| 1.0 + 0.5 * (2.0 * PI * (x - 0.3 * t)).sin());
        let xs: Vec<f64> = (0..=16).map(|i| i as f64 / 16.0).collect();
        let fwd = flow_points(&h, 0.0, 1.0, &xs, &FlowMethod::Rk4 { steps: 2048 }).unwrap();
        let back = flow_points(&h, 1.0, 0.0, &fwd, &FlowMethod::Rk4 { steps: 2048 }).unwrap();
        for (a, b) in xs.iter().zip(&back) {
            assert!((a - b).abs() < 1e-11);
        }
        let ad = flow_points(&h, 0.0, 1.0, &xs, &FlowMethod::Adaptive { tol: 1e-12, max_dx: 1e-2 }).unwrap();
        for (a, b) in fwd.iter().zip(&ad) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn autonomous_flow_composes() {
        let h = CircleHamiltonianPath::autonomous(2.0, |x| 2.0 + (2.0 * PI * x).sin());
        let opts = FlowOptions { grid: 64, method: FlowMethod::Rk4 { steps: 4096 } };
        let lifts = flow_times(&h, &[0.4, 1.0], &opts).unwrap();
        let (a, b) = (&lifts[0], &lifts[1]);
        let c = flow_with(&h, 0.6, &FlowOptions { grid: 64, method: FlowMethod::Rk4 { steps: 4096 } }).unwrap();
        for i in 0..=64 {
            assert!((c.eval(a.samples[i]) - b.samples[i]).abs() < 1e-9);
        }
    }
}
