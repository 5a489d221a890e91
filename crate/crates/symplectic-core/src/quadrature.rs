//! Gauss-Legendre and Simpson rules.

use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1]
/// (Golub-Welsch).
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1, "need at least one node");
    let mut jac = DMatrix::<f64>::zeros(m, m);
    for k in 1..m {
        let b = k as f64 / ((4 * k * k - 1) as f64).sqrt();
        jac[(k - 1, k)] = b;
        jac[(k, k - 1)] = b;
    }
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    // symmetrize to remove eigensolver noise
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    for i in 0..m {
        let j = m - 1 - i;
        x[i] = 0.5 * (pairs[i].0 - pairs[j].0);
        w[i] = 0.5 * (pairs[i].1 + pairs[j].1);
    }
    (x, w)
}

/// Composite Gauss-Legendre rule with `panels` equal panels of `m` nodes on [a, b].
pub fn composite_gauss(a: f64, b: f64, panels: usize, m: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(m);
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * m);
    let mut weights = Vec::with_capacity(panels * m);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(mid + 0.5 * h * xi);
            weights.push(0.5 * h * wi);
        }
    }
    (nodes, weights)
}

/// Composite Simpson on uniformly spaced samples; falls back to a trapezoid
/// on the last panel when the panel count is odd.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let panels = n - 1;
    let even = panels - panels % 2;
    let mut acc = 0.0;
    let mut k = 0;
    while k < even {
        acc += h / 3.0 * (values[k] + 4.0 * values[k + 1] + values[k + 2]);
        k += 2;
    }
    if panels % 2 == 1 {
        acc += 0.5 * h * (values[n - 2] + values[n - 1]);
    }
    acc
}

/// Trapezoid rule on a non-uniform grid.
pub fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    grid.windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(6);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
        assert!((s - 2.0 / 11.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn composite_gauss_on_sine() {
        let (x, w) = composite_gauss(0.0, std::f64::consts::PI, 4, 8);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.sin()).sum();
        assert!((s - 2.0).abs() < 1e-13);
    }

    #[test]
    fn simpson_on_cubic_is_exact() {
        let h = 0.1;
        let v: Vec<f64> = (0..11).map(|k| (k as f64 * h).powi(3)).collect();
        assert!((simpson(&v, h) - 0.25).abs() < 1e-14);
    }
}
