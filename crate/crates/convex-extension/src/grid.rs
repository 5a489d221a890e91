//! Convex Hamiltonians sampled on a disk grid; the functionals G-cal and V-cal.

use crate::domain::GridDomain;
use crate::error::{Error, Result};
use crate::hamiltonian::Point;

/// Values on the lattice of cell centers with one ghost layer, and per active cell the
/// central-difference Hessian (h_xx, h_xy, h_yy).
#[derive(Clone, Debug)]
pub struct ConvexHamiltonianGrid<'a> {
    pub domain: &'a GridDomain,
    pub values: Vec<f64>,
    pub hessians: Vec<[f64; 3]>,
    pub min_hess_eig: f64,
}

impl<'a> ConvexHamiltonianGrid<'a> {
    pub fn sample(domain: &'a GridDomain, f: impl Fn(Point) -> f64) -> Self {
        let m = domain.cells + 2;
        let h = domain.h;
        let coord = |i: usize| -domain.radius + (i as f64 - 0.5) * h;
        let mut values = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                values[i * m + j] = f([coord(i), coord(j)]);
            }
        }
        Self::from_values(domain, values)
    }

    /// `values` on the (cells + 2)^2 lattice, row index = x index, ghost layer included.
    pub fn from_values(domain: &'a GridDomain, values: Vec<f64>) -> Self {
        let m = domain.cells + 2;
        assert_eq!(values.len(), m * m, "lattice size mismatch");
        let h2 = domain.h * domain.h;
        let at = |i: usize, j: usize| values[i * m + j];
        let mut hessians = Vec::with_capacity(domain.active.len());
        let mut min_eig = f64::INFINITY;
        for &(ci, cj, _) in &domain.active {
            let (i, j) = (ci + 1, cj + 1);
            let c = at(i, j);
            let xx = (at(i + 1, j) - 2.0 * c + at(i - 1, j)) / h2;
            let yy = (at(i, j + 1) - 2.0 * c + at(i, j - 1)) / h2;
            let xy = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) / (4.0 * h2);
            let mean = 0.5 * (xx + yy);
            let rad = (0.25 * (xx - yy).powi(2) + xy * xy).sqrt();
            min_eig = min_eig.min(mean - rad);
            hessians.push([xx, xy, yy]);
        }
        Self { domain, values, hessians, min_hess_eig: min_eig }
    }

    pub fn is_uniformly_convex(&self) -> bool {
        self.min_hess_eig > 0.0
    }

    pub fn dets(&self) -> Vec<f64> {
        self.hessians.iter().map(|m| m[0] * m[2] - m[1] * m[1]).collect()
    }

    fn weighted_mean(&self, vals: impl Iterator<Item = f64>) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for (v, a) in vals.zip(&self.domain.active) {
            num += a.2 * v;
            den += a.2;
        }
        num / den
    }

    fn require_convex(&self) -> Result<()> {
        if self.is_uniformly_convex() { Ok(()) } else { Err(Error::NonConvex(self.min_hess_eig)) }
    }

    /// (1 / vol) int (det Hess H)^{1/2n} dz.
    pub fn functional_g(&self) -> Result<f64> {
        self.require_convex()?;
        let inv = 1.0 / (2.0 * self.domain.n as f64);
        Ok(self.weighted_mean(self.dets().into_iter().map(|d| d.powf(inv))))
    }

    /// vol(grad H (Omega)) = int det Hess H dz.
    pub fn gradient_image_volume(&self) -> Result<f64> {
        self.require_convex()?;
        Ok(self.weighted_mean(self.dets().into_iter()) * self.domain.volume())
    }

    /// (vol(grad H(Omega)) / vol(Omega))^{1/2n}, the slice integrand of V-cal.
    pub fn functional_v_slice(&self) -> Result<f64> {
        Ok((self.gradient_image_volume()? / self.domain.volume()).powf(1.0 / (2.0 * self.domain.n as f64)))
    }

    /// Weighted relative standard deviation of det Hess H over the active cells.
    pub fn det_relative_std(&self) -> f64 {
        let d = self.dets();
        let mean = self.weighted_mean(d.iter().copied());
        let var = self.weighted_mean(d.iter().map(|x| (x - mean).powi(2)));
        var.sqrt() / mean.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_values() {
        let d = GridDomain::unit_disk(16).unwrap();
        let g = ConvexHamiltonianGrid::sample(&d, |z| 0.5 * (z[0] * z[0] + z[1] * z[1]));
        assert!((g.functional_g().unwrap() - 1.0).abs() < 1e-10);
        let s = [[2.0, 0.5], [0.5, 1.0]];
        let g = ConvexHamiltonianGrid::sample(&d, |z| 0.5 * (s[0][0] * z[0] * z[0] + 2.0 * s[0][1] * z[0] * z[1] + s[1][1] * z[1] * z[1]));
        let det: f64 = 2.0 * 1.0 - 0.25;
        assert!((g.functional_g().unwrap() - det.sqrt()).abs() < 1e-9);
        assert!((g.functional_v_slice().unwrap() - det.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn rejects_nonconvex() {
        let d = GridDomain::unit_disk(8).unwrap();
        let g = ConvexHamiltonianGrid::sample(&d, |z| z[0] * z[0] - z[1] * z[1]);
        assert!(matches!(g.functional_g(), Err(Error::NonConvex(_))));
    }
}
