//! Hamiltonian Hessian schedules t -> S(t).

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use symplectic_core::linalg::{min_sym_eigenvalue, sym_eigenvalues};

use crate::error::{Error, Result};

type HessianFn = Arc<dyn Fn(f64) -> DMatrix<f64> + Send + Sync>;

#[derive(Clone)]
enum Source {
    Callable(HessianFn),
    Sampled { grid: Vec<f64>, values: Vec<DMatrix<f64>> },
}

/// S(t) on [0, T]; the path solves W' = J0 S(t) W.
#[derive(Clone)]
pub struct GeneratorSchedule {
    pub n: usize,
    pub t_end: f64,
    source: Source,
}

impl fmt::Debug for GeneratorSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.source {
            Source::Callable(_) => "callable".to_string(),
            Source::Sampled { grid, .. } => format!("sampled({})", grid.len()),
        };
        f.debug_struct("GeneratorSchedule")
            .field("n", &self.n)
            .field("t_end", &self.t_end)
            .field("source", &kind)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Causality {
    Timelike,
    Causal,
    NotCausal,
}

impl GeneratorSchedule {
    pub fn from_fn<F>(n: usize, t_end: f64, f: F) -> Self
    where
        F: Fn(f64) -> DMatrix<f64> + Send + Sync + 'static,
    {
        Self { n, t_end, source: Source::Callable(Arc::new(f)) }
    }

    /// Constant Hessian.
    pub fn constant(s: DMatrix<f64>, t_end: f64) -> Self {
        let n = s.nrows() / 2;
        Self::from_fn(n, t_end, move |_| s.clone())
    }

    /// Piecewise-linear interpolation of samples on a strictly increasing grid
    /// starting at 0.
    pub fn sampled(grid: Vec<f64>, values: Vec<DMatrix<f64>>) -> Result<Self> {
        if grid.len() < 2 || grid.len() != values.len() {
            return Err(Error::Domain("need matching grid and samples (>= 2)".into()));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) || grid[0] != 0.0 {
            return Err(Error::Domain("grid must start at 0 and increase".into()));
        }
        let n = values[0].nrows() / 2;
        let t_end = *grid.last().unwrap();
        Ok(Self { n, t_end, source: Source::Sampled { grid, values } })
    }

    pub fn eval(&self, t: f64) -> DMatrix<f64> {
        match &self.source {
            Source::Callable(f) => f(t),
            Source::Sampled { grid, values } => {
                let k = match grid.binary_search_by(|g| g.total_cmp(&t)) {
                    Ok(k) => return values[k].clone(),
                    Err(k) => k.clamp(1, grid.len() - 1),
                };
                let (t0, t1) = (grid[k - 1], grid[k]);
                let a = ((t - t0) / (t1 - t0)).clamp(0.0, 1.0);
                &values[k - 1] * (1.0 - a) + &values[k] * a
            }
        }
    }

    /// Classification over `nodes + 1` uniform samples.
    pub fn classify(&self, nodes: usize, tol: f64) -> Causality {
        let mut all_timelike = true;
        for k in 0..=nodes {
            let s = self.eval(self.t_end * k as f64 / nodes as f64);
            let ev = sym_eigenvalues(&s);
            if ev[0] < -tol || s.norm() <= tol {
                return Causality::NotCausal;
            }
            if ev[0] <= tol {
                all_timelike = false;
            }
        }
        if all_timelike {
            Causality::Timelike
        } else {
            Causality::Causal
        }
    }

    pub fn min_eigenvalue(&self, nodes: usize) -> f64 {
        (0..=nodes)
            .map(|k| min_sym_eigenvalue(&self.eval(self.t_end * k as f64 / nodes as f64)))
            .fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn check_symmetric(s: &DMatrix<f64>, t: f64) -> Result<()> {
    if (s - s.transpose()).norm() > 1e-10 * s.norm().max(1.0) {
        Err(Error::NonSymmetric(t))
    } else {
        Ok(())
    }
}
