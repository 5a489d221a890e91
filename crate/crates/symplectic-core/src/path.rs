//! Sampled paths in Sp(2n).

use nalgebra::DMatrix;

use crate::cone::is_symplectic;
use crate::error::{Error, Result};
use crate::linalg::half_dim;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathMeta {
    /// Order of the integrator that produced the nodes (0 if unknown).
    pub order: u32,
    /// Nominal step size.
    pub step: f64,
}

/// Time grid with symplectic matrices W(t_k) and optional Hessians S(t_k),
/// where W' = J0 S W.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSymplecticPath {
    pub grid: Vec<f64>,
    pub matrices: Vec<DMatrix<f64>>,
    pub generators: Option<Vec<DMatrix<f64>>>,
    pub meta: PathMeta,
}

impl SampledSymplecticPath {
    /// Validates the grid and the symplecticity of every node.
    pub fn new(
        grid: Vec<f64>,
        matrices: Vec<DMatrix<f64>>,
        generators: Option<Vec<DMatrix<f64>>>,
        meta: PathMeta,
    ) -> Result<Self> {
        if grid.is_empty() || grid.len() != matrices.len() {
            return Err(Error::Dimension(format!(
                "grid has {} nodes, {} matrices",
                grid.len(),
                matrices.len()
            )));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("grid is not strictly increasing".into()));
        }
        let n = half_dim(&matrices[0])?;
        for m in &matrices {
            if half_dim(m)? != n {
                return Err(Error::Dimension("nodes of different sizes".into()));
            }
            let scale = 1.0 + m.norm().powi(2);
            if !is_symplectic(m, 1e-8 * scale)? {
                return Err(Error::Domain("path node is not symplectic".into()));
            }
        }
        if let Some(g) = &generators {
            if g.len() != grid.len() {
                return Err(Error::Dimension("generator count differs from grid".into()));
            }
        }
        Ok(Self { grid, matrices, generators, meta })
    }

    pub fn n(&self) -> usize {
        self.matrices[0].nrows() / 2
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn start(&self) -> &DMatrix<f64> {
        &self.matrices[0]
    }

    pub fn end(&self) -> &DMatrix<f64> {
        self.matrices.last().expect("nonempty path")
    }

    pub fn horizon(&self) -> f64 {
        self.grid[self.grid.len() - 1] - self.grid[0]
    }

    /// Left-multiplies every node by A and right-multiplies by B.
    pub fn transformed(&self, a: &DMatrix<f64>, b: &DMatrix<f64>) -> Self {
        Self {
            grid: self.grid.clone(),
            matrices: self.matrices.iter().map(|w| a * w * b).collect(),
            generators: None,
            meta: self.meta,
        }
    }
}
