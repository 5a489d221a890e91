//! Geodesics t -> e^{tX} W0 and Jacobi fields along them.

use nalgebra::DMatrix;
use symplectic_core::linalg::j0;
use symplectic_core::quadrature::composite_gauss;
use symplectic_core::{expm, ConeGenerator, PathMeta, SampledSymplecticPath};

use crate::error::{Error, Result};

/// Nodes e^{t_k X} W0 on a uniform grid of `steps` steps over [0, T].
pub fn geodesic(x: &ConeGenerator, w0: &DMatrix<f64>, t_end: f64, steps: usize) -> Result<SampledSymplecticPath> {
    if !x.is_interior() {
        return Err(Error::Domain("geodesic generator must lie in the open cone".into()));
    }
    let steps = steps.max(1);
    let h = t_end / steps as f64;
    let step = expm(&(&x.x * h));
    let mut grid = Vec::with_capacity(steps + 1);
    let mut mats = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let t = k as f64 * h;
        grid.push(t);
        // recompute from scratch every 64 steps to avoid drift
        let w = if k % 64 == 0 { expm(&(&x.x * t)) * w0 } else { &step * mats.last().unwrap() };
        mats.push(w);
    }
    let gens = vec![x.s.clone(); steps + 1];
    Ok(SampledSymplecticPath::new(grid, mats, Some(gens), PathMeta { order: 0, step: h })?)
}

/// Quadrature nodes and the matching e^{sX} on [0, t].
pub(crate) fn adjoint_nodes(x: &DMatrix<f64>, t: f64) -> Vec<(f64, DMatrix<f64>, DMatrix<f64>)> {
    let panels = (2.0 * t.abs() * x.norm()).ceil() as usize + 1;
    let (nodes, weights) = composite_gauss(0.0, t, panels, 10);
    nodes
        .iter()
        .zip(&weights)
        .map(|(s, w)| (*w, expm(&(x * *s)), expm(&(x * -*s))))
        .collect()
}

/// Y_Z(t) = int_0^t e^{sX} Z e^{-sX} ds.
pub fn jacobi_field(x: &ConeGenerator, z: &DMatrix<f64>, t: f64) -> Result<DMatrix<f64>> {
    let n = x.n;
    let zs = -j0(n) * z;
    if (&zs - zs.transpose()).norm() > 1e-10 * z.norm().max(1.0) {
        return Err(Error::Domain("Z is not in sp(2n)".into()));
    }
    let mut y = DMatrix::zeros(2 * n, 2 * n);
    for (w, e, ei) in adjoint_nodes(&x.x, t) {
        y += (e * z * ei) * w;
    }
    Ok(y)
}
