//! Translation numbers of lifted circle maps.

use crate::lift::CircleLift;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationEstimate {
    pub rho: f64,
    /// Spread between the full and half-length averages.
    pub error: f64,
    pub iterations: usize,
}

pub const DEFAULT_STARTS: usize = 4;

/// rho(phi) = lim (phi^m(x) - x) / m, estimated by a smoothly weighted Birkhoff
/// average of the displacement along m iterates, averaged over several seeds x0.
pub fn translation_number(phi: &CircleLift, m: usize) -> RotationEstimate {
    let m = m.max(1);
    let (mut full, mut half) = (0.0, 0.0);
    for s in 0..DEFAULT_STARTS {
        let x0 = s as f64 / DEFAULT_STARTS as f64;
        let disp = orbit_displacements(phi, x0, m);
        full += weighted_mean(&disp);
        half += weighted_mean(&disp[..(m / 2).max(1)]);
    }
    let k = DEFAULT_STARTS as f64;
    RotationEstimate { rho: full / k, error: ((full - half) / k).abs(), iterations: m }
}

fn orbit_displacements(phi: &CircleLift, x0: f64, m: usize) -> Vec<f64> {
    let mut x = x0;
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let y = phi.eval(x);
        out.push(y - x);
        // keep the argument bounded; displacements are 1-periodic in x
        x = y - y.floor();
    }
    out
}

fn weighted_mean(d: &[f64]) -> f64 {
    let m = d.len();
    let (mut num, mut den) = (0.0, 0.0);
    for (i, di) in d.iter().enumerate() {
        let s = (i as f64 + 0.5) / m as f64;
        let w = (-1.0 / (s * (1.0 - s))).exp();
        num += w * di;
        den += w;
    }
    num / den
}


#[cfg(test)]
mod identity_tests {
    use super::*;
    use crate::{flow, metric_v, CircleHamiltonianPath};
    use std::f64::consts::PI;

    #[test]
    fn rotation_number_equals_v_for_autonomous_flows() {
        let hf = |x: f64| 2.0 + (2.0 * PI * x).cos();
        let h = CircleHamiltonianPath::autonomous(1.0, hf);
        let phi = flow(&h, 1.0).unwrap();
        let r = translation_number(&phi, 4096);
        let v = metric_v(&hf).unwrap();
        assert!((r.rho - v).abs() < 1e-8, "{r:?} vs {v}");
        assert!((v - 3f64.sqrt()).abs() < 1e-12);
    }
}
