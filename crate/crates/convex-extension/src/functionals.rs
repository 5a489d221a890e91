//! length_G-cal, V-cal and the Monge-Ampere equality check along a path of Hamiltonians.

use symplectic_core::quadrature::composite_gauss;

use crate::domain::GridDomain;
use crate::error::Result;
use crate::grid::ConvexHamiltonianGrid;
use crate::hamiltonian::ConvexHamiltonianPath;

pub const TIME_PANELS: usize = 4;

fn time_nodes(path: &ConvexHamiltonianPath) -> (Vec<f64>, Vec<f64>) {
    if path.autonomous {
        (vec![0.0], vec![path.t_end])
    } else {
        composite_gauss(0.0, path.t_end, TIME_PANELS, 8)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceValues {
    pub g: f64,
    pub v: f64,
    pub det_rel_std: f64,
}

pub fn slice_values(path: &ConvexHamiltonianPath, domain: &GridDomain, t: f64) -> Result<SliceValues> {
    let grid = ConvexHamiltonianGrid::sample(domain, path.slice(t));
    Ok(SliceValues { g: grid.functional_g()?, v: grid.functional_v_slice()?, det_rel_std: grid.det_relative_std() })
}

/// int_0^T G-cal(H_t) dt.
pub fn length_g_cal(path: &ConvexHamiltonianPath, domain: &GridDomain) -> Result<f64> {
    let (nodes, weights) = time_nodes(path);
    let mut total = 0.0;
    for (t, w) in nodes.iter().zip(&weights) {
        total += w * ConvexHamiltonianGrid::sample(domain, path.slice(*t)).functional_g()?;
    }
    Ok(total)
}

/// vol(Omega)^{-1/2n} int_0^T vol(grad H_t(Omega))^{1/2n} dt.
pub fn functional_v_of_boundary(path: &ConvexHamiltonianPath, domain: &GridDomain) -> Result<f64> {
    let (nodes, weights) = time_nodes(path);
    let mut total = 0.0;
    for (t, w) in nodes.iter().zip(&weights) {
        total += w * ConvexHamiltonianGrid::sample(domain, path.slice(*t)).functional_v_slice()?;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VarthmReport {
    pub length: f64,
    pub v: f64,
    /// v - length
    pub gap: f64,
    /// Largest relative standard deviation of det Hess H_t over the time nodes.
    pub max_det_rel_std: f64,
    /// 10 h^2
    pub ma_tol: f64,
    pub equality_flag: bool,
    pub holder_ok: bool,
    pub pass: bool,
}

/// Tolerance for length <= V, relative to V.
pub const HOLDER_TOL: f64 = 1e-8;

pub fn varthm_check(path: &ConvexHamiltonianPath, domain: &GridDomain) -> Result<VarthmReport> {
    let (nodes, weights) = time_nodes(path);
    let (mut length, mut v, mut worst) = (0.0, 0.0, 0.0f64);
    for (t, w) in nodes.iter().zip(&weights) {
        let s = slice_values(path, domain, *t)?;
        length += w * s.g;
        v += w * s.v;
        worst = worst.max(s.det_rel_std);
    }
    let ma_tol = 10.0 * domain.h * domain.h;
    let equality_flag = worst <= ma_tol;
    let holder_ok = length <= v + HOLDER_TOL * v.abs().max(1.0);
    let pass = holder_ok && (!equality_flag || (v - length).abs() <= ma_tol);
    Ok(VarthmReport { length, v, gap: v - length, max_det_rel_std: worst, ma_tol, equality_flag, holder_ok, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_quadratic_path() {
        let d = GridDomain::unit_disk(16).unwrap();
        let p = ConvexHamiltonianPath::quadratic(1.0, |t| {
            let c = 1.0 + t * t;
            [[c, 0.0], [0.0, c]]
        });
        // det Hess = c^2, so both functionals integrate c(t) = 1 + t^2
        let exact = 4.0 / 3.0;
        assert!((length_g_cal(&p, &d).unwrap() - exact).abs() < 1e-10);
        assert!((functional_v_of_boundary(&p, &d).unwrap() - exact).abs() < 1e-10);
        let r = varthm_check(&p, &d).unwrap();
        assert!(r.equality_flag && r.pass);
    }

    #[test]
    fn quartic_has_a_gap() {
        let d = GridDomain::unit_disk(128).unwrap();
        let r = varthm_check(&ConvexHamiltonianPath::quartic(1.0, 0.05), &d).unwrap();
        assert!(!r.equality_flag);
        assert!(r.gap > 10.0 * d.h * d.h, "{r:?}");
        assert!(r.pass);
    }
}
