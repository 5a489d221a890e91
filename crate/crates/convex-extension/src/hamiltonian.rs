//! Time-dependent convex Hamiltonians on the plane, with value, gradient and Hessian.

use std::sync::Arc;

use nalgebra::DMatrix;

pub type Point = [f64; 2];
pub type Hess = [[f64; 2]; 2];

type ValueFn = Arc<dyn Fn(f64, Point) -> f64 + Send + Sync>;
type GradFn = Arc<dyn Fn(f64, Point) -> Point + Send + Sync>;
type HessFn = Arc<dyn Fn(f64, Point) -> Hess + Send + Sync>;

/// t -> H_t on [0, t_end].
#[derive(Clone)]
pub struct ConvexHamiltonianPath {
    value: ValueFn,
    gradient: GradFn,
    hessian: HessFn,
    pub t_end: f64,
    pub autonomous: bool,
}

impl std::fmt::Debug for ConvexHamiltonianPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConvexHamiltonianPath").field("t_end", &self.t_end).field("autonomous", &self.autonomous).finish()
    }
}

const FD_STEP: f64 = 1e-4;

impl ConvexHamiltonianPath {
    pub fn new(
        t_end: f64,
        autonomous: bool,
        value: impl Fn(f64, Point) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(f64, Point) -> Point + Send + Sync + 'static,
        hessian: impl Fn(f64, Point) -> Hess + Send + Sync + 'static,
    ) -> Self {
        Self { value: Arc::new(value), gradient: Arc::new(gradient), hessian: Arc::new(hessian), t_end, autonomous }
    }

    /// Derivatives by central differences of the value.
    pub fn from_value(t_end: f64, autonomous: bool, value: impl Fn(f64, Point) -> f64 + Send + Sync + 'static) -> Self {
        let v: ValueFn = Arc::new(value);
        let (vg, vh) = (v.clone(), v.clone());
        let gradient = move |t: f64, z: Point| {
            let e = FD_STEP;
            [
                (vg(t, [z[0] + e, z[1]]) - vg(t, [z[0] - e, z[1]])) / (2.0 * e),
                (vg(t, [z[0], z[1] + e]) - vg(t, [z[0], z[1] - e])) / (2.0 * e),
            ]
        };
        let hessian = move |t: f64, z: Point| {
            let e = 1e-3;
            let f = |dx: f64, dy: f64| vh(t, [z[0] + dx, z[1] + dy]);
            let c = f(0.0, 0.0);
            let xx = (f(e, 0.0) - 2.0 * c + f(-e, 0.0)) / (e * e);
            let yy = (f(0.0, e) - 2.0 * c + f(0.0, -e)) / (e * e);
            let xy = (f(e, e) - f(e, -e) - f(-e, e) + f(-e, -e)) / (4.0 * e * e);
            [[xx, xy], [xy, yy]]
        };
        Self { value: v, gradient: Arc::new(gradient), hessian: Arc::new(hessian), t_end, autonomous }
    }

    /// H_t(z) = 1/2 S(t) z . z.
    pub fn quadratic(t_end: f64, s: impl Fn(f64) -> Hess + Send + Sync + 'static) -> Self {
        let s = Arc::new(s);
        let (s1, s2, s3) = (s.clone(), s.clone(), s);
        Self::new(
            t_end,
            false,
            move |t, z| {
                let m = s1(t);
                0.5 * (m[0][0] * z[0] * z[0] + 2.0 * m[0][1] * z[0] * z[1] + m[1][1] * z[1] * z[1])
            },
            move |t, z| {
                let m = s2(t);
                [m[0][0] * z[0] + m[0][1] * z[1], m[1][0] * z[0] + m[1][1] * z[1]]
            },
            move |t, _| s3(t),
        )
    }

    pub fn autonomous_quadratic(t_end: f64, s: Hess) -> Self {
        let mut p = Self::quadratic(t_end, move |_| s);
        p.autonomous = true;
        p
    }

    /// H(z) = f(|z|^2 / 2), given f', f'' as functions of s = |z|^2 / 2.
    pub fn radial(
        t_end: f64,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
        ddf: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        let df = Arc::new(df);
        let df2 = df.clone();
        let s_of = |z: Point| 0.5 * (z[0] * z[0] + z[1] * z[1]);
        Self::new(
            t_end,
            true,
            move |_, z| f(s_of(z)),
            move |_, z| {
                let d = df(s_of(z));
                [d * z[0], d * z[1]]
            },
            move |_, z| {
                let (d, dd) = (df2(s_of(z)), ddf(s_of(z)));
                [[d + dd * z[0] * z[0], dd * z[0] * z[1]], [dd * z[0] * z[1], d + dd * z[1] * z[1]]]
            },
        )
    }

    /// 1/2 |z|^2 + a (x^4 + y^4).
    pub fn quartic(t_end: f64, a: f64) -> Self {
        Self::new(
            t_end,
            true,
            move |_, z| 0.5 * (z[0] * z[0] + z[1] * z[1]) + a * (z[0].powi(4) + z[1].powi(4)),
            move |_, z| [z[0] + 4.0 * a * z[0].powi(3), z[1] + 4.0 * a * z[1].powi(3)],
            move |_, z| [[1.0 + 12.0 * a * z[0] * z[0], 0.0], [0.0, 1.0 + 12.0 * a * z[1] * z[1]]],
        )
    }

    pub fn value(&self, t: f64, z: Point) -> f64 {
        (self.value)(t, z)
    }

    pub fn gradient(&self, t: f64, z: Point) -> Point {
        (self.gradient)(t, z)
    }

    pub fn hessian(&self, t: f64, z: Point) -> Hess {
        (self.hessian)(t, z)
    }

    pub fn hessian_matrix(&self, t: f64, z: Point) -> DMatrix<f64> {
        let m = self.hessian(t, z);
        DMatrix::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]])
    }

    /// The time-t slice as a function of z.
    pub fn slice(&self, t: f64) -> impl Fn(Point) -> f64 + '_ {
        move |z| self.value(t, z)
    }
}
