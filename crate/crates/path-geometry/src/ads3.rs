//! Sp(2) = AdS3 in the chart (phi, theta, tau) -> (1/cos phi) R(tau) + tan phi M(theta),
//! and long timelike paths hugging the conformal boundary.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use symplectic_core::linalg::{j0, min_sym_eigenvalue};
use symplectic_core::{PathMeta, SampledSymplecticPath};

use crate::error::{Error, Result};
use crate::integrate::length_g_path;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdS3Point {
    /// Polar angle from the north pole, in [0, pi/2).
    pub phi: f64,
    pub theta: f64,
    pub tau: f64,
}

fn rot(t: f64) -> DMatrix<f64> {
    let (s, c) = t.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
}

fn refl(t: f64) -> DMatrix<f64> {
    let (s, c) = t.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, s, s, -c])
}

pub fn ads3_chart(p: &AdS3Point) -> Result<DMatrix<f64>> {
    if !(p.phi >= 0.0 && p.phi < FRAC_PI_2) {
        return Err(Error::Domain(format!("phi = {} outside [0, pi/2)", p.phi)));
    }
    Ok(rot(p.tau) / p.phi.cos() + refl(p.theta) * p.phi.tan())
}

/// Partial derivatives (d/dphi, d/dtheta, d/dtau) of the chart.
pub fn ads3_differential(p: &AdS3Point) -> [DMatrix<f64>; 3] {
    let c = p.phi.cos();
    let d_phi = rot(p.tau) * (p.phi.sin() / (c * c)) + refl(p.theta) / (c * c);
    let (s, co) = p.theta.sin_cos();
    let d_theta = DMatrix::from_row_slice(2, 2, &[-s, co, co, s]) * p.phi.tan();
    let d_tau = j0(1) * rot(p.tau) / c;
    [d_phi, d_theta, d_tau]
}

/// Inverse chart; tau is chosen in (tau_hint - pi, tau_hint + pi].
pub fn ads3_inverse(w: &DMatrix<f64>, tau_hint: f64) -> Result<AdS3Point> {
    if w.nrows() != 2 || w.ncols() != 2 {
        return Err(Error::Domain("AdS3 chart is for 2x2 matrices".into()));
    }
    let j = j0(1);
    let jwj = &j * w * j.transpose();
    let comm = (w + &jwj) * 0.5;
    let anti = (w - &jwj) * 0.5;
    let mut tau = comm[(1, 0)].atan2(comm[(0, 0)]);
    tau += 2.0 * PI * ((tau_hint - tau) / (2.0 * PI)).round();
    let tan = anti[(0, 0)].hypot(anti[(0, 1)]);
    let phi = tan.atan2(1.0);
    let mut theta = anti[(0, 1)].atan2(anti[(0, 0)]);
    if theta < 0.0 {
        theta += 2.0 * PI;
    }
    Ok(AdS3Point { phi, theta, tau })
}

/// Conformal model quadratic form (1/cos^2 phi)(ds^2 - dtau^2) of a coordinate velocity.
pub fn conformal_quadratic_form(p: &AdS3Point, v: [f64; 3]) -> f64 {
    let ds2 = v[0] * v[0] + p.phi.sin().powi(2) * v[1] * v[1];
    (ds2 - v[2] * v[2]) / p.phi.cos().powi(2)
}

/// A long timelike path from the identity to an AdS3 target.
#[derive(Debug, Clone)]
pub struct LongPath {
    pub path: SampledSymplecticPath,
    pub coords: Vec<AdS3Point>,
    pub min_eig_s: Vec<f64>,
    pub length: f64,
    pub phi_max: f64,
    pub endpoint_error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Plan {
    phi0: f64,
    phi_max: f64,
    eta: f64,
    tau1: f64,
}

/// Piecewise-constant phi-velocity with C^1 smoothstep blends (width <= 1e-2)
/// at the breakpoints; tau' is constant.
#[derive(Debug, Clone)]
struct Profile {
    breaks: Vec<f64>,
    vels: Vec<f64>,
    windows: Vec<f64>,
}

impl Profile {
    fn new(plan: &Plan) -> Self {
        let speed = plan.tau1 / (1.0 + plan.eta);
        let up = plan.phi_max / speed;
        let down = (plan.phi_max - plan.phi0) / speed;
        let hold = 1.0 - up - down;
        let mut durs = vec![(up, speed), (hold, 0.0), (down, -speed)];
        durs.retain(|d| d.0 > 0.0);
        let mut breaks = vec![0.0];
        let mut vels = Vec::new();
        for (d, v) in &durs {
            breaks.push(breaks.last().unwrap() + d);
            vels.push(*v);
        }
        *breaks.last_mut().unwrap() = 1.0;
        let windows = (1..vels.len())
            .map(|k| 1e-2f64.min(0.5 * (breaks[k] - breaks[k - 1])).min(0.5 * (breaks[k + 1] - breaks[k])))
            .collect();
        Self { breaks, vels, windows }
    }

    fn velocity(&self, t: f64) -> f64 {
        for k in 1..self.vels.len() {
            let (b, w) = (self.breaks[k], self.windows[k - 1]);
            let s = (t - b + 0.5 * w) / w;
            if s > 0.0 && s < 1.0 {
                let r = s * s * (3.0 - 2.0 * s);
                return self.vels[k - 1] + (self.vels[k] - self.vels[k - 1]) * r;
            }
        }
        self.vels[self.segment(t)]
    }

    fn segment(&self, t: f64) -> usize {
        let mut seg = 0;
        while seg + 1 < self.vels.len() && t >= self.breaks[seg + 1] {
            seg += 1;
        }
        seg
    }

    fn position(&self, t: f64) -> f64 {
        let mut x = 0.0;
        for k in 0..self.vels.len() {
            let (a, b) = (self.breaks[k], self.breaks[k + 1]);
            if t > a {
                x += self.vels[k] * (t.min(b) - a);
            }
        }
        for k in 1..self.vels.len() {
            let (b, w) = (self.breaks[k], self.windows[k - 1]);
            let s = (t - b + 0.5 * w) / w;
            if s > 0.0 && s < 1.0 {
                let dv = self.vels[k] - self.vels[k - 1];
                let ramp = w * (s.powi(3) - 0.5 * s.powi(4));
                x += dv * (ramp - (t - b).max(0.0));
            }
        }
        x
    }
}

fn analytic_length(plan: &Plan, profile: &Profile, samples: usize) -> f64 {
    let (x, w) = symplectic_core::quadrature::composite_gauss(0.0, 1.0, samples, 8);
    x.iter()
        .zip(&w)
        .map(|(t, wt)| {
            let phi = profile.position(*t);
            let v = profile.velocity(*t);
            wt * (plan.tau1 * plan.tau1 - v * v).max(0.0).sqrt() / phi.cos()
        })
        .sum()
}

/// Builds a timelike path id -> chart(target) along the meridian of the
/// target: out toward the boundary, along tau near phi_max, then back.
pub fn long_path_construct(target: &AdS3Point, min_length: f64, nodes: usize) -> Result<LongPath> {
    let phi0 = target.phi;
    let tau1 = target.tau;
    if !(phi0 >= 0.0 && phi0 < FRAC_PI_2) {
        return Err(Error::Domain("target phi outside [0, pi/2)".into()));
    }
    if !(tau1 > phi0) {
        return Err(Error::Causality("target is not in the timelike future of the identity".into()));
    }
    if tau1 <= PI - phi0 {
        return Err(Error::Domain(
            "target lies in the closed elliptic diamond, where lengths are bounded".into(),
        ));
    }
    let eta = 0.1f64.min(0.5 * (tau1 / phi0.max(1e-300) - 1.0)).max(1e-6);
    // hold segment needs (1 + eta)(2 phi_max - phi0) < tau1
    let phi_lim = (0.5 * (tau1 / (1.0 + eta) + phi0)).min(FRAC_PI_2 - 1e-9);
    let margin = 1.0 + 1e-3;
    let make = |phi_max: f64| Plan { phi0, phi_max, eta, tau1 };
    let len_at = |phi_max: f64| {
        let plan = make(phi_max);
        analytic_length(&plan, &Profile::new(&plan), 2048)
    };
    let mut phi_max = phi0;
    if len_at(phi0) < min_length * margin {
        let mut lo = phi0;
        let mut hi = None;
        for k in 1..60 {
            let cand = phi_lim - (phi_lim - phi0) * 0.5f64.powi(k);
            if len_at(cand) >= min_length * margin {
                hi = Some(cand);
                break;
            }
            lo = cand;
        }
        let mut hi = hi.ok_or_else(|| Error::Causality("requested length not reachable".into()))?;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if len_at(mid) >= min_length * margin {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        phi_max = hi;
    }
    let plan = make(phi_max);
    let profile = Profile::new(&plan);
    let nodes = nodes.max(16);
    let j = j0(1);
    let mut grid = Vec::with_capacity(nodes + 1);
    let mut mats = Vec::with_capacity(nodes + 1);
    let mut gens = Vec::with_capacity(nodes + 1);
    let mut coords = Vec::with_capacity(nodes + 1);
    let mut min_eig = Vec::with_capacity(nodes + 1);
    for k in 0..=nodes {
        let t = k as f64 / nodes as f64;
        let p = AdS3Point { phi: profile.position(t).max(0.0), theta: target.theta, tau: tau1 * t };
        let w = if k == 0 { DMatrix::identity(2, 2) } else { ads3_chart(&p)? };
        let [dp, _, dt] = ads3_differential(&p);
        let wdot = dp * profile.velocity(t) + dt * tau1;
        let w_inv = DMatrix::from_row_slice(2, 2, &[w[(1, 1)], -w[(0, 1)], -w[(1, 0)], w[(0, 0)]]);
        let s = -&j * wdot * w_inv;
        let s = (&s + s.transpose()) * 0.5;
        min_eig.push(min_sym_eigenvalue(&s));
        grid.push(t);
        mats.push(w);
        gens.push(s);
        coords.push(p);
    }
    let path = SampledSymplecticPath::new(grid, mats, Some(gens), PathMeta { order: 0, step: 1.0 / nodes as f64 })?;
    if let Some(k) = min_eig.iter().position(|&e| !(e > 0.0)) {
        return Err(Error::Causality(format!("node {k} is not timelike after smoothing")));
    }
    let length = length_g_path(&path)?;
    let endpoint_error = (path.end() - ads3_chart(target)?).norm();
    Ok(LongPath { path, coords, min_eig_s: min_eig, length, phi_max, endpoint_error })
}
