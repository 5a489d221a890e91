//! Continuous lift of the Gel'fand-Lidskii function along sampled paths.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::krein::gelfand_lidskii_upsilon;
use crate::linalg::{expm, logm};
use crate::path::SampledSymplecticPath;

/// Budget of inserted nodes per lift.
pub const REFINE_BUDGET: usize = 1 << 20;
/// Largest Frobenius norm of a refined relative step log(W_{k+1} W_k^{-1}).
const MAX_STEP_NORM: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct LiftedMaslov {
    /// Lift of arg(upsilon)/2pi at each grid node.
    pub mu_values: Vec<f64>,
    /// Net number of full turns of upsilon, rounded toward minus infinity.
    pub winding_counter: i64,
    /// Nodes inserted by refinement.
    pub refinements: usize,
}

impl LiftedMaslov {
    pub fn final_value(&self) -> f64 {
        *self.mu_values.last().expect("nonempty lift")
    }
}

/// Lift with mu = 0 at the first node, which must be the identity.
pub fn maslov_lift(path: &SampledSymplecticPath) -> Result<LiftedMaslov> {
    let dim = path.start().nrows();
    if (path.start() - DMatrix::<f64>::identity(dim, dim)).norm() > 1e-8 {
        return Err(Error::Domain("maslov_lift: path must start at the identity".into()));
    }
    maslov_lift_from(&path.matrices, 0.0)
}

/// Lift along a sequence of nodes starting from a given value mu0, which must
/// be compatible with upsilon at the first node.
pub fn maslov_lift_from(nodes: &[DMatrix<f64>], mu0: f64) -> Result<LiftedMaslov> {
    if nodes.is_empty() {
        return Err(Error::Dimension("empty path".into()));
    }
    let u0 = gelfand_lidskii_upsilon(&nodes[0])?;
    let expected = Complex64::from_polar(1.0, 2.0 * PI * mu0);
    if (u0 - expected).norm() > 1e-6 {
        return Err(Error::Domain("initial lift value incompatible with upsilon".into()));
    }
    let mut mu = vec![mu0];
    let mut budget = REFINE_BUDGET;
    let mut refinements = 0;
    let mut u_prev = u0;
    for k in 0..nodes.len() - 1 {
        let (du, u_next) = segment_increment(&nodes[k], &nodes[k + 1], u_prev, &mut budget, &mut refinements)?;
        mu.push(mu[k] + du);
        u_prev = u_next;
    }
    let last = *mu.last().unwrap();
    Ok(LiftedMaslov { mu_values: mu, winding_counter: (last - mu0).floor() as i64, refinements })
}

fn arg_step(a: Complex64, b: Complex64) -> f64 {
    (b * a.conj()).arg()
}

/// Lift increment from `w0` to `w1` along s -> exp(s X) w0, X = log(w1 w0^{-1}).
fn segment_increment(
    w0: &DMatrix<f64>,
    w1: &DMatrix<f64>,
    u0: Complex64,
    budget: &mut usize,
    refinements: &mut usize,
) -> Result<(f64, Complex64)> {
    let u1 = gelfand_lidskii_upsilon(w1)?;
    let d = arg_step(u0, u1);
    let w0_inv = w0
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Domain("singular node".into()))?;
    let rel = w1 * &w0_inv;
    let dim = rel.nrows();
    let near_id = (&rel - DMatrix::<f64>::identity(dim, dim)).norm();
    if d.abs() < FRAC_PI_2 && near_id <= MAX_STEP_NORM {
        return Ok((d / (2.0 * PI), u1));
    }
    let x = logm(&rel).map_err(|e| Error::Resolution(format!("cannot interpolate segment: {e}")))?;
    let mut stack: Vec<(f64, f64)> = vec![(0.0, 1.0)];
    let mut total = 0.0;
    let mut u_at = u0;
    let mut s_at = 0.0;
    // Depth-first over [s_a, s_b], visiting subintervals left to right.
    while let Some((a, b)) = stack.pop() {
        debug_assert!((a - s_at).abs() < 1e-15);
        let wb = expm(&(&x * b)) * w0;
        let ub = gelfand_lidskii_upsilon(&wb)?;
        let step = arg_step(u_at, ub);
        let step_norm = (&x * (b - a)).norm();
        if step.abs() < FRAC_PI_2 && step_norm <= MAX_STEP_NORM {
            total += step;
            u_at = ub;
            s_at = b;
            continue;
        }
        if *budget == 0 || b - a < 1e-12 {
            return Err(Error::Resolution("maslov_lift refinement budget exceeded".into()));
        }
        *budget -= 1;
        *refinements += 1;
        let mid = 0.5 * (a + b);
        stack.push((mid, b));
        stack.push((a, mid));
    }
    let _ = s_at;
    Ok((total / (2.0 * PI), u1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::j0;
    use crate::path::PathMeta;

    fn rotation_path(n: usize, rate: f64, t_end: f64, nodes: usize) -> SampledSymplecticPath {
        let grid: Vec<f64> = (0..nodes).map(|k| t_end * k as f64 / (nodes - 1) as f64).collect();
        let mats = grid.iter().map(|t| expm(&(j0(n) * (rate * t)))).collect();
        SampledSymplecticPath::new(grid, mats, None, PathMeta { order: 0, step: 0.0 }).unwrap()
    }

    #[test]
    fn full_loop_gives_n() {
        for n in 1..=3 {
            let lift = maslov_lift(&rotation_path(n, 2.0 * PI, 1.0, 65)).unwrap();
            assert!((lift.final_value() - n as f64).abs() < 1e-9, "n={n}: {}", lift.final_value());
        }
    }

    #[test]
    fn coarse_loop_is_refined() {
        let lift = maslov_lift(&rotation_path(2, 2.0 * PI, 1.0, 3)).unwrap();
        assert!((lift.final_value() - 2.0).abs() < 1e-9);
        assert!(lift.refinements > 0);
    }

    #[test]
    fn partial_rotation() {
        let theta = 2.0;
        let lift = maslov_lift(&rotation_path(1, 1.0, theta, 33)).unwrap();
        assert!((lift.final_value() - theta / (2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn constant_path() {
        let grid = vec![0.0, 0.5, 1.0];
        let mats = vec![DMatrix::identity(2, 2); 3];
        let p = SampledSymplecticPath::new(grid, mats, None, PathMeta { order: 0, step: 0.0 }).unwrap();
        assert_eq!(maslov_lift(&p).unwrap().final_value(), 0.0);
    }

    #[test]
    fn must_start_at_identity() {
        let p = rotation_path(1, 1.0, 1.0, 3).transformed(&expm(&(j0(1) * 0.3)), &DMatrix::identity(2, 2));
        assert!(maslov_lift(&p).is_err());
    }
}
