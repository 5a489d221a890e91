//! Second variation of length_V along the unit-speed rotation of the circle.
//!
//! For a variation with Hamiltonian K(t, x) vanishing at t = 0 and t = T,
//! Q(K) = 2 int_0^T [ (int K_t dx)^2 - int K_t^2 dx - int K_x K_t dx ] dt.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use symplectic_core::quadrature::composite_gauss;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SecondVariation {
    pub matrix: DMatrix<f64>,
    pub eigenvalues: Vec<f64>,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl SecondVariation {
    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// x-modes: 1, cos(2 pi j x), sin(2 pi j x) for j = 1..=m.
fn x_mode(idx: usize, x: f64) -> (f64, f64) {
    if idx == 0 {
        return (1.0, 0.0);
    }
    let j = idx.div_ceil(2) as f64;
    let w = 2.0 * PI * j;
    if idx % 2 == 1 {
        ((w * x).cos(), -w * (w * x).sin())
    } else {
        ((w * x).sin(), w * (w * x).cos())
    }
}

/// Assembles the form on span{ x_mode(a) * sin(pi l t / T) : l = 1..=l_max }.
/// Basis index = a * l_max + (l - 1).
pub fn second_variation_circle(horizon: f64, m: usize, l_max: usize) -> Result<SecondVariation> {
    if m < 1 || l_max < 1 || !(horizon > 0.0) {
        return Err(Error::Domain("need M, L >= 1 and T > 0".into()));
    }
    let nx = 2 * m + 1;
    // x-integrals by the periodic trapezoid rule, exact for these degrees
    let px = 4 * m + 8;
    let mut mean = vec![0.0; nx];
    let mut ff = DMatrix::<f64>::zeros(nx, nx);
    let mut dff = DMatrix::<f64>::zeros(nx, nx); // int f_a' f_b
    for i in 0..px {
        let x = i as f64 / px as f64;
        let vals: Vec<(f64, f64)> = (0..nx).map(|a| x_mode(a, x)).collect();
        for a in 0..nx {
            mean[a] += vals[a].0 / px as f64;
            for b in 0..nx {
                ff[(a, b)] += vals[a].0 * vals[b].0 / px as f64;
                dff[(a, b)] += vals[a].1 * vals[b].0 / px as f64;
            }
        }
    }
    // t-integrals of s_l s_r', s_l' s_r' by Gauss-Legendre (polynomial-free, so use many panels)
    let (tn, tw) = composite_gauss(0.0, horizon, 4 * l_max, 10);
    let mut ss_d = DMatrix::<f64>::zeros(l_max, l_max); // int s_l s_r'
    let mut sd_sd = DMatrix::<f64>::zeros(l_max, l_max); // int s_l' s_r'
    for (t, w) in tn.iter().zip(&tw) {
        let s: Vec<(f64, f64)> = (1..=l_max)
            .map(|l| {
                let k = PI * l as f64 / horizon;
                ((k * t).sin(), k * (k * t).cos())
            })
            .collect();
        for l in 0..l_max {
            for r in 0..l_max {
                ss_d[(l, r)] += w * s[l].0 * s[r].1;
                sd_sd[(l, r)] += w * s[l].1 * s[r].1;
            }
        }
    }
    let dim = nx * l_max;
    let mut q = DMatrix::<f64>::zeros(dim, dim);
    for a in 0..nx {
        for l in 0..l_max {
            let i = a * l_max + l;
            for b in 0..nx {
                for r in 0..l_max {
                    let j = b * l_max + r;
                    let time_part = (mean[a] * mean[b] - ff[(a, b)]) * sd_sd[(l, r)];
                    // symmetrized int K_x K_t
                    let cross = 0.5 * (dff[(a, b)] * ss_d[(l, r)] + dff[(b, a)] * ss_d[(r, l)]);
                    q[(i, j)] = 2.0 * (time_part - cross);
                }
            }
        }
    }
    let q = (&q + q.transpose()) * 0.5;
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(q.clone()).eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.total_cmp(b));
    let scale = eigenvalues.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let tol = 1e-10 * scale.max(1.0);
    let positive = eigenvalues.iter().filter(|e| **e > tol).count();
    let negative = eigenvalues.iter().filter(|e| **e < -tol).count();
    Ok(SecondVariation { matrix: q, zero: dim - positive - negative, eigenvalues, positive, negative })
}
