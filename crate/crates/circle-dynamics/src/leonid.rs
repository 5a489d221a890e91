//! Arbitrarily long positive paths that stay below the translation by 1/k + eps.
//!
//! H_t(x) = h(k (x - eps t)) with h 1-periodic, h >= eps with equality at 0, and h = c
//! away from a window of width delta around the integers. In the frame y = x - eps t the
//! flow is autonomous with speed h(k y) - eps, which vanishes on Z / k, so no point
//! advances by more than 1/k + eps, while length_V = V(h) is as large as c and delta allow.

use crate::error::{Error, Result};
use crate::flow::{flow_with, FlowMethod, FlowOptions};
use crate::hamiltonian::CircleHamiltonianPath;
use crate::lift::CircleLift;
use crate::metric::{length_v_with, metric_v_resolved};

/// Smooth step: 0 for s <= 0, 1 for s >= 1, all derivatives vanish at both ends.
pub fn smooth_step(s: f64) -> f64 {
    let f = |u: f64| if u > 0.0 { (-1.0 / u).exp() } else { 0.0 };
    let (a, b) = (f(s), f(1.0 - s));
    if a + b == 0.0 { 0.0 } else { a / (a + b) }
}

/// The plateau profile: eps at the integers, c outside a window of width delta.
pub fn plateau(c: f64, delta: f64, eps: f64) -> impl Fn(f64) -> f64 + Clone + Send + Sync + 'static {
    move |x: f64| {
        let u = x.rem_euclid(1.0);
        let d = u.min(1.0 - u);
        if d >= 0.5 * delta { c } else { eps + (c - eps) * smooth_step(2.0 * d / delta) }
    }
}

#[derive(Clone, Debug)]
pub struct LongCirclePath {
    pub path: CircleHamiltonianPath,
    pub k: usize,
    pub eps: f64,
    pub c: f64,
    pub delta: f64,
    /// V(h)
    pub v_profile: f64,
    pub length: f64,
    pub endpoint: CircleLift,
    pub max_displacement: f64,
    /// 1/k + eps
    pub endpoint_bound: f64,
    pub endpoint_ok: bool,
    pub length_ok: bool,
}

impl LongCirclePath {
    pub fn pass(&self) -> bool {
        self.endpoint_ok && self.length_ok
    }
}

pub const ENDPOINT_TOL: f64 = 1e-9;
pub const FLOW_TOL: f64 = 1e-12;

pub fn long_circle_path(k: usize, eps: f64, target_length: f64) -> Result<LongCirclePath> {
    long_circle_path_grid(k, eps, target_length, 256)
}

pub fn long_circle_path_grid(k: usize, eps: f64, target_length: f64, grid: usize) -> Result<LongCirclePath> {
    if k == 0 || !(eps > 0.0) || !(target_length > 0.0) {
        return Err(Error::Domain("need k >= 1, eps > 0 and L > 0".into()));
    }
    // c/delta, hence the stiffness, is smallest when half of 1/V comes from the plateau
    let c = (2.0 * target_length).max(2.0 * eps);
    let goal = target_length * (1.0 + 1e-4);
    // resolve the window with at least 64 nodes
    let points = |delta: f64| (64.0 / delta).ceil().min(1e6) as usize;
    let v_of = |delta: f64| metric_v_resolved(&plateau(c, delta, eps), points(delta));
    let (mut lo, mut hi) = (0.0, 1.0);
    if v_of(hi)? >= goal {
        lo = hi;
    } else {
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if mid == 0.0 {
                break;
            }
            if v_of(mid)? >= goal {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    if lo == 0.0 {
        return Err(Error::Resolution("no plateau width reaches the target length".into()));
    }
    let delta = lo;
    let h = plateau(c, delta, eps);
    let v_profile = metric_v_resolved(&h, points(delta))?;
    let kf = k as f64;
    let path = CircleHamiltonianPath::from_fn(1.0, move |t, x| h(kf * (x - eps * t))).with_min_points(k * points(delta));
    let length = length_v_with(&path, 2)?;
    let endpoint = flow_with(&path, 1.0, &FlowOptions { grid, method: FlowMethod::Adaptive { tol: FLOW_TOL, max_dx: delta / (16.0 * kf) } })?;
    let max_displacement = endpoint.displacements().into_iter().fold(f64::NEG_INFINITY, f64::max);
    let endpoint_bound = 1.0 / kf + eps;
    Ok(LongCirclePath {
        path,
        k,
        eps,
        c,
        delta,
        v_profile,
        length,
        max_displacement,
        endpoint_bound,
        endpoint_ok: max_displacement <= endpoint_bound + ENDPOINT_TOL,
        length_ok: length >= target_length,
        endpoint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_shape() {
        let h = plateau(20.0, 0.1, 0.1);
        assert_eq!(h(0.0), 0.1);
        assert_eq!(h(0.5), 20.0);
        assert!((h(0.03) - h(-0.03)).abs() < 1e-12);
        assert!((h(0.2) - h(1.2)).abs() < 1e-15);
    }

    #[test]
    fn length_ten_certificate() {
        let lp = long_circle_path(1, 0.1, 10.0).unwrap();
        assert!(lp.pass(), "{:?}", (lp.length, lp.max_displacement, lp.delta));
        assert!((lp.length - lp.v_profile).abs() < 1e-8 * lp.v_profile);
        assert!(lp.max_displacement <= 1.0 + 0.1 + ENDPOINT_TOL);
    }

    #[test]
    fn length_hundred_below_one_over_k() {
        for k in 1..=3 {
            let t = std::time::Instant::now();
            let lp = long_circle_path(k, 0.1, 100.0).unwrap();
            assert!(lp.pass(), "k={k} {:?}", (lp.length, lp.max_displacement, lp.delta));
            assert!(lp.length >= 100.0);
            println!("k={k} len={} maxdisp={} delta={} {:?}", lp.length, lp.max_displacement, lp.delta, t.elapsed());
        }
    }
}
