//! Krein form, Krein signatures of unit-circle eigenvalues, and the
//! Gel'fand-Lidskii circle function.

use nalgebra::{DMatrix, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, half_dim, to_complex, CMatrix, CVector};

/// Relative distance below which eigenvalues form one cluster.
pub const CLUSTER_TOL: f64 = 1e-6;
/// Relative threshold for the sign count of the Krein Gram matrix.
pub const GRAM_TOL: f64 = 1e-8;

/// kappa(u, v) = <-i J0 u, v>, linear in u, antilinear in v.
pub fn krein_form(u: &CVector, v: &CVector) -> Result<Complex64> {
    if u.len() != v.len() || u.len() % 2 != 0 {
        return Err(Error::Dimension(format!("lengths {} and {}", u.len(), v.len())));
    }
    let i = Complex64::i();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..u.len() / 2 {
        acc += i * (u[2 * k + 1] * v[2 * k].conj() - u[2 * k] * v[2 * k + 1].conj());
    }
    Ok(acc)
}

/// A unit-circle eigenvalue cluster with its Krein signature (p, q).
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCircleEigen {
    pub lambda: Complex64,
    pub alg_mult: usize,
    pub krein_signature: (usize, usize),
}

impl UnitCircleEigen {
    pub fn is_plus_minus_one(&self) -> bool {
        is_real_unit(self.lambda)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KreinSpectrum {
    pub on_circle: Vec<UnitCircleEigen>,
    /// Eigenvalue clusters off the unit circle, with their sizes.
    pub off_circle: Vec<(Complex64, usize)>,
    /// Total algebraic multiplicity of negative real eigenvalues.
    pub negative_real_mult: usize,
    /// Orthonormal invariant-subspace bases of the `on_circle` clusters
    /// (empty for +-1).
    pub(crate) bases: Vec<CMatrix>,
}

impl KreinSpectrum {
    pub fn off_circle_count(&self) -> usize {
        self.off_circle.iter().map(|c| c.1).sum()
    }

    pub fn on_circle_count(&self) -> usize {
        self.on_circle.iter().map(|e| e.alg_mult).sum()
    }
}

fn is_real_unit(z: Complex64) -> bool {
    (z - 1.0).norm() <= CLUSTER_TOL || (z + 1.0).norm() <= CLUSTER_TOL
}

/// Default circle tolerance 1e-8 (1 + ||W||).
pub fn default_circle_tol(w: &DMatrix<f64>) -> f64 {
    1e-8 * (1.0 + w.norm())
}

fn cluster(eigs: &[Complex64]) -> Vec<Vec<Complex64>> {
    let m = eigs.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut c = i;
        while p[c] != r {
            let nx = p[c];
            p[c] = r;
            c = nx;
        }
        r
    }
    for a in 0..m {
        for b in (a + 1)..m {
            let scale = 1f64.max(eigs[a].norm()).max(eigs[b].norm());
            if (eigs[a] - eigs[b]).norm() <= CLUSTER_TOL * scale {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    let mut root_index: Vec<Option<usize>> = vec![None; m];
    for i in 0..m {
        let r = find(&mut parent, i);
        match root_index[r] {
            Some(g) => groups[g].push(eigs[i]),
            None => {
                root_index[r] = Some(groups.len());
                groups.push(vec![eigs[i]]);
            }
        }
    }
    groups
}

fn mean(zs: &[Complex64]) -> Complex64 {
    zs.iter().sum::<Complex64>() / zs.len() as f64
}

/// Orthonormal basis of the invariant subspace belonging to a cluster,
/// as the null space of prod (W - lambda_i).
fn invariant_subspace(w: &CMatrix, members: &[Complex64]) -> Result<CMatrix> {
    let dim = w.nrows();
    let m = members.len();
    let id = CMatrix::identity(dim, dim);
    let mut p = id.clone();
    for &l in members {
        p = (w - &id * l) * p;
    }
    let svd = SVD::new(p, false, true);
    let vt = svd.v_t.ok_or_else(|| Error::Convergence("SVD failed".into()))?;
    let sv = &svd.singular_values;
    let kept_max = sv[dim - m];
    let next = if m < dim { sv[dim - m - 1] } else { f64::INFINITY };
    if !(kept_max <= 1e-4 * next) {
        return Err(Error::NumericalRank(format!(
            "invariant subspace not separated: sigma_kept={kept_max:.3e}, sigma_next={next:.3e}"
        )));
    }
    let mut basis = CMatrix::zeros(dim, m);
    for c in 0..m {
        let row = vt.row(dim - m + c);
        for r in 0..dim {
            basis[(r, c)] = row[r].conj();
        }
    }
    let residual = (w * &basis - &basis * (basis.adjoint() * w * &basis)).norm();
    if residual > 1e-6 * (1.0 + w.norm()) {
        return Err(Error::NumericalRank(format!("invariant subspace residual {residual:.3e}")));
    }
    Ok(basis)
}

fn krein_gram(basis: &CMatrix) -> Result<CMatrix> {
    let m = basis.ncols();
    let mut g = CMatrix::zeros(m, m);
    for a in 0..m {
        for b in 0..m {
            g[(a, b)] = krein_form(&basis.column(a).into_owned(), &basis.column(b).into_owned())?;
        }
    }
    Ok(g)
}

/// Unit-circle eigenvalues with Krein signatures, using the default circle tolerance.
pub fn krein_spectrum(w: &DMatrix<f64>) -> Result<KreinSpectrum> {
    krein_spectrum_tol(w, default_circle_tol(w))
}

pub fn krein_spectrum_tol(w: &DMatrix<f64>, circle_tol: f64) -> Result<KreinSpectrum> {
    half_dim(w)?;
    crate::linalg::check_finite(w)?;
    let eigs = eigenvalues(w)?;
    let wc = to_complex(w);
    let mut on_circle = Vec::new();
    let mut bases = Vec::new();
    let mut off_circle = Vec::new();
    let mut negative_real_mult = 0;
    for members in cluster(&eigs) {
        let c = mean(&members);
        let m = members.len();
        if c.re < 0.0 && c.im.abs() <= CLUSTER_TOL * c.norm().max(1.0) {
            negative_real_mult += m;
        }
        if (c.norm() - 1.0).abs() > circle_tol {
            off_circle.push((c, m));
            continue;
        }
        if is_real_unit(c) {
            if m % 2 != 0 {
                return Err(Error::NumericalRank(format!("odd multiplicity {m} at +-1")));
            }
            let lambda = Complex64::new(c.re.signum(), 0.0);
            on_circle.push(UnitCircleEigen { lambda, alg_mult: m, krein_signature: (m / 2, m / 2) });
            bases.push(CMatrix::zeros(0, 0));
            continue;
        }
        let basis = invariant_subspace(&wc, &members)?;
        let gram = krein_gram(&basis)?;
        bases.push(basis);
        let gnorm = gram.norm();
        let ev = SymmetricEigen::new(gram).eigenvalues;
        let thr = GRAM_TOL * gnorm.max(f64::MIN_POSITIVE);
        let p = ev.iter().filter(|&&e| e > thr).count();
        let q = ev.iter().filter(|&&e| e < -thr).count();
        if p + q != m {
            return Err(Error::NumericalRank(format!(
                "degenerate Krein Gram matrix at {c}: p={p}, q={q}, m={m}"
            )));
        }
        on_circle.push(UnitCircleEigen { lambda: c / c.norm(), alg_mult: m, krein_signature: (p, q) });
    }
    let mut paired: Vec<(UnitCircleEigen, CMatrix)> = on_circle.into_iter().zip(bases).collect();
    paired.sort_by(|a, b| a.0.lambda.arg().total_cmp(&b.0.lambda.arg()));
    let (on_circle, bases) = paired.into_iter().unzip();
    Ok(KreinSpectrum { on_circle, off_circle, negative_real_mult, bases })
}

/// True iff the spectrum lies on the circle off +-1 and the eigenvalues with
/// positive imaginary part are exactly the Krein-positive ones.
pub fn is_positively_elliptic(w: &DMatrix<f64>) -> bool {
    match krein_spectrum(w) {
        Ok(spec) => {
            spec.off_circle.is_empty()
                && spec.on_circle.iter().all(|e| {
                    !e.is_plus_minus_one()
                        && if e.lambda.im > 0.0 {
                            e.krein_signature.1 == 0
                        } else {
                            e.krein_signature.0 == 0
                        }
                })
        }
        Err(_) => false,
    }
}

/// Angles in [0, pi] of the Krein-positive eigenvalues of an element of the
/// closed positively elliptic region, sorted ascending; +-1 clusters contribute
/// half their multiplicity.
pub fn krein_positive_angles(w: &DMatrix<f64>) -> Result<Vec<f64>> {
    let spec = krein_spectrum(w)?;
    let mut angles = Vec::new();
    for e in &spec.on_circle {
        let a = if e.is_plus_minus_one() {
            if e.lambda.re > 0.0 {
                0.0
            } else {
                std::f64::consts::PI
            }
        } else {
            let a = e.lambda.arg();
            if a < 0.0 {
                a + 2.0 * std::f64::consts::PI
            } else {
                a
            }
        };
        for _ in 0..e.krein_signature.0 {
            angles.push(a);
        }
    }
    angles.sort_by(|a, b| a.total_cmp(b));
    Ok(angles)
}

/// upsilon(W) = (-1)^m prod lambda^{p(lambda)} over circle eigenvalues off +-1.
pub fn gelfand_lidskii_upsilon(w: &DMatrix<f64>) -> Result<Complex64> {
    let spec = krein_spectrum(w)?;
    Ok(upsilon_of(&spec))
}

pub fn upsilon_of(spec: &KreinSpectrum) -> Complex64 {
    let mut z = if (spec.negative_real_mult / 2) % 2 == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(-1.0, 0.0)
    };
    for e in &spec.on_circle {
        if !e.is_plus_minus_one() {
            z *= e.lambda.powu(e.krein_signature.0 as u32);
        }
    }
    z / z.norm()
}
