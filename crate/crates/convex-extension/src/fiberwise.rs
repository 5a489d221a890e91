//! Linearized flows at sample points: the fiberwise length identity and the averaged
//! Maslov quasimorphism.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use path_geometry::length_g_path;
use symplectic_core::linalg::eigenvalues;
use symplectic_core::{maslov_lift, PathMeta, SampledSymplecticPath};

use crate::domain::GridDomain;
use crate::error::{Error, Result};
use crate::functionals::length_g_cal;
use crate::hamiltonian::{ConvexHamiltonianPath, Point};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Sampling {
    /// Halton points in bases 2 and 3, mapped area-preservingly to the disk.
    Halton,
    /// Uniform random points; draw order (u, v) per point.
    Random { seed: u64 },
}

pub const DEFAULT_STEPS: usize = 256;
pub const BOUNDARY_TOL: f64 = 1e-6;

fn radical_inverse(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

pub fn disk_samples(radius: f64, m: usize, sampling: Sampling) -> Vec<Point> {
    let map = |u: f64, v: f64| {
        let r = radius * u.sqrt();
        let (s, c) = (2.0 * PI * v).sin_cos();
        [r * c, r * s]
    };
    match sampling {
        Sampling::Halton => (1..=m).map(|i| map(radical_inverse(i, 2), radical_inverse(i, 3))).collect(),
        Sampling::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..m)
                .map(|_| {
                    let u: f64 = rng.random();
                    let v: f64 = rng.random();
                    map(u, v)
                })
                .collect()
        }
    }
}

/// The trajectory of z under the flow of H and the linearized path d phi^t(z), with
/// generators Hess H_t(phi^t(z)) at the nodes.
pub fn linearized_path(path: &ConvexHamiltonianPath, domain: &GridDomain, z0: Point, steps: usize) -> Result<SampledSymplecticPath> {
    let dt = path.t_end / steps as f64;
    // state: z (2) and Phi (2x2, row-major)
    let rhs = |t: f64, s: &[f64; 6]| -> [f64; 6] {
        let z = [s[0], s[1]];
        let g = path.gradient(t, z);
        let h = path.hessian(t, z);
        // J0 = [[0, -1], [1, 0]]
        let x = [[-h[1][0], -h[1][1]], [h[0][0], h[0][1]]];
        [
            -g[1],
            g[0],
            x[0][0] * s[2] + x[0][1] * s[4],
            x[0][0] * s[3] + x[0][1] * s[5],
            x[1][0] * s[2] + x[1][1] * s[4],
            x[1][0] * s[3] + x[1][1] * s[5],
        ]
    };
    let mut s = [z0[0], z0[1], 1.0, 0.0, 0.0, 1.0];
    let mut grid = Vec::with_capacity(steps + 1);
    let mut matrices = Vec::with_capacity(steps + 1);
    let mut gens = Vec::with_capacity(steps + 1);
    let record = |t: f64, s: &[f64; 6], grid: &mut Vec<f64>, mats: &mut Vec<DMatrix<f64>>, gens: &mut Vec<DMatrix<f64>>| -> Result<()> {
        let z = [s[0], s[1]];
        if !domain.contains(z, BOUNDARY_TOL) {
            return Err(Error::Boundary(format!("|z| = {} at t = {t}", (z[0] * z[0] + z[1] * z[1]).sqrt())));
        }
        grid.push(t);
        mats.push(DMatrix::from_row_slice(2, 2, &s[2..6]));
        gens.push(path.hessian_matrix(t, z));
        Ok(())
    };
    record(0.0, &s, &mut grid, &mut matrices, &mut gens)?;
    for k in 0..steps {
        let t = k as f64 * dt;
        let add = |a: &[f64; 6], b: &[f64; 6], c: f64| -> [f64; 6] { std::array::from_fn(|i| a[i] + c * b[i]) };
        let k1 = rhs(t, &s);
        let k2 = rhs(t + 0.5 * dt, &add(&s, &k1, 0.5 * dt));
        let k3 = rhs(t + 0.5 * dt, &add(&s, &k2, 0.5 * dt));
        let k4 = rhs(t + dt, &add(&s, &k3, dt));
        s = std::array::from_fn(|i| s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        record((k + 1) as f64 * dt, &s, &mut grid, &mut matrices, &mut gens)?;
    }
    Ok(SampledSymplecticPath::new(grid, matrices, Some(gens), PathMeta { order: 4, step: dt })?)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiberwiseReport {
    /// Sample average of length_G(t -> d phi^t(z)).
    pub lhs_average: f64,
    /// length_G-cal of the path on the grid.
    pub rhs: f64,
    pub diff: f64,
    pub rel_diff: f64,
    pub samples: usize,
}

pub fn fiberwise_length_identity(
    path: &ConvexHamiltonianPath,
    domain: &GridDomain,
    m: usize,
    sampling: Sampling,
) -> Result<FiberwiseReport> {
    if m == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let mut total = 0.0;
    for z in disk_samples(domain.radius, m, sampling) {
        total += length_g_path(&linearized_path(path, domain, z, DEFAULT_STEPS)?)?;
    }
    let lhs_average = total / m as f64;
    let rhs = length_g_cal(path, domain)?;
    let diff = lhs_average - rhs;
    Ok(FiberwiseReport { lhs_average, rhs, diff, rel_diff: diff.abs() / rhs.abs(), samples: m })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RuelleReport {
    /// Average of mu over the sampled linearized paths.
    pub m_cal: f64,
    pub length_g_cal: f64,
    /// (2 pi / n) M-cal
    pub bound: f64,
    /// Smallest |lambda + 1| over all sampled nodes and eigenvalues; zero when some
    /// linearized path is detected to pass through the eigenvalue -1 between nodes.
    pub min_dist_to_minus_one: f64,
    pub hypothesis_holds: bool,
    /// `None` when some linearized path comes within spec_tol of the eigenvalue -1.
    pub pass: Option<bool>,
}

pub const SPEC_TOL: f64 = 1e-6;
pub const RUELLE_TOL: f64 = 1e-6;

pub fn ruelle_maslov_average(
    path: &ConvexHamiltonianPath,
    domain: &GridDomain,
    m: usize,
    sampling: Sampling,
) -> Result<RuelleReport> {
    if m == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let mut total = 0.0;
    let mut min_dist = f64::INFINITY;
    for z in disk_samples(domain.radius, m, sampling) {
        let lp = linearized_path(path, domain, z, DEFAULT_STEPS)?;
        for w in &lp.matrices {
            for l in eigenvalues(w)? {
                min_dist = min_dist.min((l + 1.0).norm());
            }
        }
        let lift = maslov_lift(&lp)?;
        // in Sp(2) a path from id meets the eigenvalue -1 exactly when mu reaches 1/2 in absolute value
        if domain.n == 1 && lift.mu_values.iter().any(|mu| mu.abs() >= 0.5) {
            min_dist = 0.0;
        }
        total += lift.final_value();
    }
    let m_cal = total / m as f64;
    let length = length_g_cal(path, domain)?;
    let bound = 2.0 * PI / domain.n as f64 * m_cal;
    let hypothesis_holds = min_dist > SPEC_TOL;
    let pass = hypothesis_holds.then_some(length <= bound + RUELLE_TOL);
    Ok(RuelleReport { m_cal, length_g_cal: length, bound, min_dist_to_minus_one: min_dist, hypothesis_holds, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_case_is_sharp() {
        let d = GridDomain::unit_disk(16).unwrap();
        let theta = 2.0;
        let p = ConvexHamiltonianPath::autonomous_quadratic(1.0, [[theta, 0.0], [0.0, theta]]);
        let r = ruelle_maslov_average(&p, &d, 16, Sampling::Halton).unwrap();
        assert!((r.m_cal - theta / (2.0 * PI)).abs() < 1e-10, "{r:?}");
        assert!((r.bound - theta).abs() < 1e-9);
        assert!((r.length_g_cal - theta).abs() < 1e-9);
        assert_eq!(r.pass, Some(true));
        let f = fiberwise_length_identity(&p, &d, 16, Sampling::Halton).unwrap();
        assert!(f.rel_diff < 1e-9, "{f:?}");
    }

    #[test]
    fn crossing_minus_one_is_reported_only() {
        let d = GridDomain::unit_disk(8).unwrap();
        let p = ConvexHamiltonianPath::autonomous_quadratic(1.0, [[4.0, 0.0], [0.0, 4.0]]);
        let r = ruelle_maslov_average(&p, &d, 4, Sampling::Halton).unwrap();
        assert!(!r.hypothesis_holds);
        assert_eq!(r.pass, None);
    }

    #[test]
    fn leaving_the_disk_is_an_error() {
        let d = GridDomain::unit_disk(8).unwrap();
        let p = ConvexHamiltonianPath::autonomous_quadratic(1.0, [[4.0, 0.0], [0.0, 0.25]]);
        assert!(matches!(linearized_path(&p, &d, [0.9, 0.0], 64), Err(Error::Boundary(_))));
    }
}
