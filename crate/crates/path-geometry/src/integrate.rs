//! Midpoint-exponential integration, length_G, first variation.

use nalgebra::DMatrix;
use symplectic_core::linalg::{j0, logm, sym_eigenvalues, sym_part};
use symplectic_core::quadrature::{composite_gauss, simpson};
use symplectic_core::{expm, PathMeta, SampledSymplecticPath};

use crate::error::{Error, Result};
use crate::schedule::{check_symmetric, GeneratorSchedule};

/// Default number of steps per unit time.
pub const STEPS_PER_UNIT_TIME: usize = 512;

/// W_{k+1} = exp(h J0 S(t_k + h/2)) W_k, W_0 = id. Node generators are S(t_k).
pub fn integrate_path(sched: &GeneratorSchedule, steps: usize) -> Result<SampledSymplecticPath> {
    if steps == 0 {
        return Err(Error::Domain("need at least one step".into()));
    }
    let n = sched.n;
    let j = j0(n);
    let h = sched.t_end / steps as f64;
    let mut w = DMatrix::<f64>::identity(2 * n, 2 * n);
    let mut grid = Vec::with_capacity(steps + 1);
    let mut mats = Vec::with_capacity(steps + 1);
    let mut gens = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let t = k as f64 * h;
        let s = sched.eval(t);
        check_symmetric(&s, t)?;
        grid.push(t);
        mats.push(w.clone());
        gens.push(sym_part(&s));
        if k < steps {
            let tm = t + 0.5 * h;
            let sm = sched.eval(tm);
            check_symmetric(&sm, tm)?;
            w = expm(&(&j * sym_part(&sm) * h)) * w;
        }
    }
    Ok(SampledSymplecticPath::new(grid, mats, Some(gens), PathMeta { order: 2, step: h })?)
}

/// G(J0 S) = (det S)^{1/2n} for S positive semidefinite; small negative
/// eigenvalues within `tol` are clipped.
pub fn g_of_hessian(s: &DMatrix<f64>, tol: f64) -> Result<f64> {
    let ev = sym_eigenvalues(s);
    let scale = s.norm().max(1.0);
    if ev[0] < -tol * scale {
        return Err(Error::NotCausal(format!("Hessian eigenvalue {:.3e}", ev[0])));
    }
    if ev[0] <= 0.0 {
        return Ok(0.0);
    }
    Ok((ev.iter().map(|l| l.ln()).sum::<f64>() / ev.len() as f64).exp())
}

/// length_G of a schedule by composite Gauss-Legendre quadrature.
pub fn length_g_schedule(sched: &GeneratorSchedule, panels: usize) -> Result<f64> {
    let (x, w) = composite_gauss(0.0, sched.t_end, panels.max(1), 8);
    let mut acc = 0.0;
    for (t, wt) in x.iter().zip(&w) {
        let s = sched.eval(*t);
        check_symmetric(&s, *t)?;
        acc += wt * g_of_hessian(&s, 1e-10)?;
    }
    Ok(acc)
}

/// length_G of a sampled path. Uses node generators when present (Simpson on
/// uniform grids, trapezoid otherwise); else the midpoint finite-difference
/// generators log(W_{k+1} W_k^{-1}) / h.
pub fn length_g_path(path: &SampledSymplecticPath) -> Result<f64> {
    if let Some(gens) = &path.generators {
        let vals = gens.iter().map(|s| g_of_hessian(s, 1e-10)).collect::<Result<Vec<_>>>()?;
        let h0 = path.grid[1] - path.grid[0];
        let uniform = path.grid.windows(2).all(|w| ((w[1] - w[0]) - h0).abs() <= 1e-12 * h0.max(1.0));
        if uniform {
            return Ok(simpson(&vals, h0));
        }
        return Ok(symplectic_core::quadrature::trapezoid(&path.grid, &vals));
    }
    let mut acc = 0.0;
    for (s, h) in midpoint_hessians(path)? {
        acc += h * g_of_hessian(&s, 1e-8)?;
    }
    Ok(acc)
}

/// Midpoint Hessians from finite differences, with their step sizes.
pub fn midpoint_hessians(path: &SampledSymplecticPath) -> Result<Vec<(DMatrix<f64>, f64)>> {
    let j = j0(path.n());
    let mut out = Vec::with_capacity(path.len().saturating_sub(1));
    for k in 0..path.len() - 1 {
        let h = path.grid[k + 1] - path.grid[k];
        let inv = symplectic_core::random::symplectic_inverse(&path.matrices[k]);
        let x = logm(&(&path.matrices[k + 1] * inv))?;
        out.push((sym_part(&(-&j * x / h)), h));
    }
    Ok(out)
}

/// First variation of length_G against the hat functions at the interior
/// nodes of a uniform N-element mesh, in the directions B_a of an orthonormal
/// basis of sp(2n): entries (1/2n) int G(X) tr(X^{-1} B_a) phi_i' dt.
pub fn first_variation(sched: &GeneratorSchedule, elements: usize) -> Result<DMatrix<f64>> {
    let n = sched.n;
    let basis = crate::conjugate::sp_basis(n);
    let h = sched.t_end / elements as f64;
    let (gx, gw) = symplectic_core::quadrature::gauss_legendre(10);
    // per-element integrals of G(X) tr(X^{-1} B_a)
    let mut elem = DMatrix::<f64>::zeros(elements, basis.len());
    for e in 0..elements {
        let mid = (e as f64 + 0.5) * h;
        for (xi, wi) in gx.iter().zip(&gw) {
            let t = mid + 0.5 * h * xi;
            let s = sched.eval(t);
            let x = j0(n) * &s;
            let g = g_of_hessian(&s, 1e-10)?;
            let x_inv = x
                .try_inverse()
                .ok_or_else(|| Error::NotCausal("singular generator".into()))?;
            for (a, b) in basis.iter().enumerate() {
                elem[(e, a)] += 0.5 * h * wi * g * (&x_inv * b).trace();
            }
        }
    }
    let mut out = DMatrix::zeros(elements - 1, basis.len());
    for i in 1..elements {
        for a in 0..basis.len() {
            // phi_i' = 1/h on element i-1, -1/h on element i
            out[(i - 1, a)] = (elem[(i - 1, a)] - elem[(i, a)]) / (h * 2.0 * n as f64);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use symplectic_core::is_symplectic;

    #[test]
    fn autonomous_rotation_is_exact() {
        let theta = 1.3;
        let sched = GeneratorSchedule::constant(DMatrix::identity(2, 2), theta);
        let p = integrate_path(&sched, 1).unwrap();
        assert!((p.end() - expm(&(j0(1) * theta))).norm() < 1e-14);
    }

    #[test]
    fn commuting_family_second_order() {
        let sched = GeneratorSchedule::from_fn(1, 1.0, |t| DMatrix::identity(2, 2) * (1.0 + t));
        let exact = expm(&(j0(1) * 1.5));
        let e1 = (integrate_path(&sched, 16).unwrap().end() - &exact).norm();
        // midpoint rule is exact for linear integrands
        assert!(e1 < 1e-13);
    }

    #[test]
    fn convergence_order_two() {
        let s0 = DMatrix::from_row_slice(4, 4, &[
            2.0, 0.3, 0.1, 0.0, 0.3, 1.0, 0.2, 0.1, 0.1, 0.2, 1.5, -0.3, 0.0, 0.1, -0.3, 1.2,
        ]);
        let s1 = DMatrix::from_row_slice(4, 4, &[
            0.0, 0.5, 0.0, 0.2, 0.5, 0.0, -0.4, 0.0, 0.0, -0.4, 0.3, 0.1, 0.2, 0.0, 0.1, -0.2,
        ]);
        let sched = GeneratorSchedule::from_fn(2, 1.0, move |t| &s0 + &s1 * (3.0 * t).sin());
        let reference = integrate_path(&sched, 4096).unwrap().end().clone();
        let e = |n| (integrate_path(&sched, n).unwrap().end() - &reference).norm();
        let ratio = e(32) / e(64);
        assert!(ratio > 3.6 && ratio < 4.4, "ratio {ratio}");
    }

    #[test]
    fn nodes_stay_symplectic() {
        let sched = GeneratorSchedule::from_fn(2, 5.0, |t| {
            let mut s = DMatrix::identity(4, 4);
            s[(0, 3)] = t.cos();
            s[(3, 0)] = t.cos();
            s * 3.0
        });
        let p = integrate_path(&sched, 2000).unwrap();
        for w in &p.matrices {
            assert!(is_symplectic(w, 1e-10).unwrap());
        }
    }

    #[test]
    fn nonsymmetric_sample_is_rejected() {
        let sched = GeneratorSchedule::constant(DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]), 1.0);
        assert!(matches!(integrate_path(&sched, 4), Err(Error::NonSymmetric(_))));
    }

    #[test]
    fn lightlike_has_zero_length() {
        let sched = GeneratorSchedule::constant(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]), 2.0);
        assert_eq!(length_g_schedule(&sched, 8).unwrap(), 0.0);
    }

    #[test]
    fn negative_hessian_is_not_causal() {
        let sched = GeneratorSchedule::constant(-DMatrix::<f64>::identity(2, 2), 1.0);
        assert!(matches!(length_g_schedule(&sched, 4), Err(Error::NotCausal(_))));
    }

    #[test]
    fn rotation_angle_schedule_length() {
        // W = exp(theta(t) J0), theta = t + t^2: length = theta(1) = 2
        let sched = GeneratorSchedule::from_fn(1, 1.0, |t| DMatrix::identity(2, 2) * (1.0 + 2.0 * t));
        assert!((length_g_schedule(&sched, 4).unwrap() - 2.0).abs() < 1e-13);
        let p = integrate_path(&sched, 64).unwrap();
        assert!((length_g_path(&p).unwrap() - 2.0).abs() < 1e-12);
    }
}
