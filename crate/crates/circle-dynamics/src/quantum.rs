//! Length bound for paths in P_k whose endpoint stays below id + s / (4k).

use rand::Rng;

use crate::error::{Error, Result};
use crate::flow::{flow_with, FlowMethod, FlowOptions};
use crate::hamiltonian::CircleHamiltonianPath;
use crate::metric::length_v;
use crate::trig::TrigPolynomial;

pub const LENGTH_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantumReport {
    pub k: usize,
    pub s: f64,
    /// max_x (phi^1(x) - x)
    pub max_displacement: f64,
    /// s / (4k)
    pub threshold: f64,
    pub hypothesis_holds: bool,
    pub length: f64,
    /// (1 / (1 - s)) int (phi^1(x) - x) dx
    pub bound: f64,
    /// `None` when the hypothesis fails and nothing is asserted.
    pub pass: Option<bool>,
    pub margin: f64,
}

pub fn quantum_bound_check(h: &CircleHamiltonianPath, k: usize, s: f64, opts: &FlowOptions) -> Result<QuantumReport> {
    if !(s > 0.0 && s < 1.0) || k == 0 {
        return Err(Error::Domain("need s in (0, 1) and k >= 1".into()));
    }
    if !h.is_trig() {
        return Err(Error::Domain("slices must be trigonometric polynomials".into()));
    }
    for i in 0..=16 {
        let t = h.t_end * i as f64 / 16.0;
        let p = h.trig_slice(t).expect("trig path");
        if p.effective_degree() > k {
            return Err(Error::Domain(format!("slice at t = {t} has degree above {k}")));
        }
    }
    let min = h.min_on_grid(64, 64);
    if !(min > 0.0) {
        return Err(Error::NonPositive(min));
    }
    let phi = flow_with(h, h.t_end, opts)?;
    let max_displacement = phi.max_displacement(8);
    let threshold = s / (4.0 * k as f64);
    let hypothesis_holds = max_displacement <= threshold;
    let length = length_v(h)?;
    let bound = phi.mean_displacement() / (1.0 - s);
    let pass = hypothesis_holds.then_some(length <= bound + LENGTH_TOL);
    Ok(QuantumReport { k, s, max_displacement, threshold, hypothesis_holds, length, bound, pass, margin: bound - length })
}

/// Random positive path in P_k on [0, 1]:
/// H(t, x) = a0 + sum_j (al_j + be_j sin 2 pi t) cos 2 pi j x + (ga_j + de_j cos 2 pi t) sin 2 pi j x.
/// Draw order: for j = 1..=k the tuple (al_j, be_j, ga_j, de_j), each U(-1, 1); then a0 - floor ~ U(0.05, 1)
/// where floor = sum of all absolute draws.
pub fn random_pk_path<R: Rng + ?Sized>(k: usize, rng: &mut R) -> CircleHamiltonianPath {
    let mut coef = Vec::with_capacity(k);
    let mut floor = 0.0;
    for _ in 0..k {
        let c: [f64; 4] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        floor += c.iter().map(|x| x.abs()).sum::<f64>();
        coef.push(c);
    }
    let a0 = floor + rng.random_range(0.05..1.0);
    CircleHamiltonianPath::from_trig(1.0, move |t| {
        let (st, ct) = (2.0 * std::f64::consts::PI * t).sin_cos();
        let mut a = vec![a0];
        let mut b = vec![0.0];
        for c in &coef {
            a.push(c[0] + c[1] * st);
            b.push(c[2] + c[3] * ct);
        }
        TrigPolynomial::new(a, b)
    })
}

const COARSE: FlowOptions = FlowOptions { grid: 64, method: FlowMethod::Rk4 { steps: 256 } };

/// Scales h so that max(phi^1 - id) = target, to relative accuracy rel.
pub fn rescale_to_displacement(h: &CircleHamiltonianPath, target: f64, rel: f64) -> Result<CircleHamiltonianPath> {
    let disp = |lambda: f64| -> Result<f64> { Ok(flow_with(&h.scaled(lambda), h.t_end, &COARSE)?.max_displacement(4)) };
    let mut lo = 0.0;
    let mut hi = target / h.min_on_grid(16, 64).max(1e-12) / h.t_end;
    while disp(hi)? < target {
        lo = hi;
        hi *= 2.0;
    }
    // the displacement is nearly linear in lambda, so regula falsi converges fast
    let (mut d_lo, mut d_hi) = (0.0, disp(hi)?);
    for _ in 0..100 {
        let mid = lo + (target - d_lo) * (hi - lo) / (d_hi - d_lo);
        let mid = mid.clamp(lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo));
        let d = disp(mid)?;
        if (d - target).abs() <= rel * target {
            return Ok(h.scaled(mid));
        }
        if d < target {
            lo = mid;
            d_lo = d;
        } else {
            hi = mid;
            d_hi = d;
        }
    }
    Err(Error::Resolution("rescaling did not converge".into()))
}
