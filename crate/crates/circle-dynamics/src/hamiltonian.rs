//! Time-dependent 1-periodic Hamiltonians on the circle.

use std::sync::Arc;

use crate::trig::TrigPolynomial;

type PointFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type TrigFn = Arc<dyn Fn(f64) -> TrigPolynomial + Send + Sync>;

#[derive(Clone)]
enum Source {
    Point(PointFn),
    Trig(TrigFn),
}

/// H(t, x) on [0, t_end] x R, 1-periodic in x.
#[derive(Clone)]
pub struct CircleHamiltonianPath {
    source: Source,
    pub t_end: f64,
    pub autonomous: bool,
    /// Spatial resolution that quadratures over x must start from.
    pub min_points: usize,
}

impl std::fmt::Debug for CircleHamiltonianPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CircleHamiltonianPath")
            .field("t_end", &self.t_end)
            .field("autonomous", &self.autonomous)
            .field("trig", &self.is_trig())
            .finish()
    }
}

impl CircleHamiltonianPath {
    pub fn from_fn(t_end: f64, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { source: Source::Point(Arc::new(f)), t_end, autonomous: false, min_points: 64 }
    }

    pub fn autonomous(t_end: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { source: Source::Point(Arc::new(move |_, x| f(x))), t_end, autonomous: true, min_points: 64 }
    }

    /// Each time slice is a trigonometric polynomial.
    pub fn from_trig(t_end: f64, f: impl Fn(f64) -> TrigPolynomial + Send + Sync + 'static) -> Self {
        Self { source: Source::Trig(Arc::new(f)), t_end, autonomous: false, min_points: 64 }
    }

    pub fn autonomous_trig(t_end: f64, p: TrigPolynomial) -> Self {
        Self { source: Source::Trig(Arc::new(move |_| p.clone())), t_end, autonomous: true, min_points: 64 }
    }

    pub fn constant(c: f64, t_end: f64) -> Self {
        Self::autonomous_trig(t_end, TrigPolynomial::constant(c))
    }

    pub fn with_min_points(mut self, n: usize) -> Self {
        self.min_points = n;
        self
    }

    /// lambda * H, keeping the representation.
    pub fn scaled(&self, lambda: f64) -> Self {
        let source = match &self.source {
            Source::Point(f) => {
                let f = f.clone();
                Source::Point(Arc::new(move |t, x| lambda * f(t, x)))
            }
            Source::Trig(f) => {
                let f = f.clone();
                Source::Trig(Arc::new(move |t| f(t).scaled(lambda)))
            }
        };
        Self { source, ..self.clone() }
    }

    pub fn is_trig(&self) -> bool {
        matches!(self.source, Source::Trig(_))
    }

    /// The time slice as a trigonometric polynomial, when available.
    pub fn trig_slice(&self, t: f64) -> Option<TrigPolynomial> {
        match &self.source {
            Source::Trig(f) => Some(f(t)),
            Source::Point(_) => None,
        }
    }

    pub fn eval(&self, t: f64, x: f64) -> f64 {
        match &self.source {
            Source::Point(f) => f(t, x),
            Source::Trig(f) => f(t).eval(x),
        }
    }

    /// Evaluate one time slice at many points.
    pub fn eval_slice(&self, t: f64, xs: &[f64], out: &mut [f64]) {
        match &self.source {
            Source::Point(f) => {
                for (o, &x) in out.iter_mut().zip(xs) {
                    *o = f(t, x);
                }
            }
            Source::Trig(f) => {
                let p = f(t);
                for (o, &x) in out.iter_mut().zip(xs) {
                    *o = p.eval(x);
                }
            }
        }
    }

    /// Minimum over a uniform (nt + 1) x nx sample grid of [0, t_end] x [0, 1).
    pub fn min_on_grid(&self, nt: usize, nx: usize) -> f64 {
        let xs: Vec<f64> = (0..nx).map(|i| i as f64 / nx as f64).collect();
        let mut buf = vec![0.0; nx];
        let mut m = f64::INFINITY;
        let nt = if self.autonomous { 0 } else { nt };
        for i in 0..=nt {
            let t = if nt == 0 { 0.0 } else { self.t_end * i as f64 / nt as f64 };
            self.eval_slice(t, &xs, &mut buf);
            m = buf.iter().fold(m, |a, &b| a.min(b));
        }
        m
    }

    pub fn is_positive(&self, nt: usize, nx: usize) -> bool {
        self.min_on_grid(nt, nx) > 0.0
    }

    /// Largest |H(t, x) - H(t, x + 1)| on the sample grid.
    pub fn periodicity_defect(&self, nt: usize, nx: usize) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..=nt {
            let t = self.t_end * i as f64 / nt.max(1) as f64;
            for j in 0..nx {
                let x = j as f64 / nx as f64;
                d = d.max((self.eval(t, x) - self.eval(t, x + 1.0)).abs());
            }
        }
        d
    }
}
