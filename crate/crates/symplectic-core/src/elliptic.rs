//! Logarithm on the positively elliptic region.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cone::{ConeGenerator, Membership};
use crate::error::{Error, Result};
use crate::krein::{is_positively_elliptic, krein_spectrum};
use crate::linalg::{to_complex, CMatrix};

/// The unique X in sp+(2n) with spectrum in (-i pi, i pi) and exp(X) = W.
///
/// Built spectrally: on the invariant subspace of each Krein-positive cluster
/// e^{i theta}, theta in (0, pi), X acts as a logarithm of the restriction of W,
/// and on the conjugate subspace as its conjugate.
pub fn log_elliptic(w: &DMatrix<f64>) -> Result<ConeGenerator> {
    if !is_positively_elliptic(w) {
        return Err(Error::Domain("log_elliptic: W is not positively elliptic".into()));
    }
    let dim = w.nrows();
    let spec = krein_spectrum(w)?;
    let wc = to_complex(w);
    let mut basis = CMatrix::zeros(dim, dim);
    let mut diag_blocks: Vec<CMatrix> = Vec::new();
    let mut col = 0;
    for (e, v) in spec.on_circle.iter().zip(&spec.bases).filter(|(e, _)| e.lambda.im > 0.0) {
        let m = v.ncols();
        let restricted = v.adjoint() * &wc * v;
        let log_block = log_near_scalar(&restricted, e.lambda)?;
        basis.view_mut((0, col), (dim, m)).copy_from(v);
        basis.view_mut((0, col + m), (dim, m)).copy_from(&v.map(|z| z.conj()));
        diag_blocks.push(log_block.clone());
        diag_blocks.push(log_block.map(|z| z.conj()));
        col += 2 * m;
    }
    if col != dim {
        return Err(Error::NumericalRank("Krein-positive subspaces do not span".into()));
    }
    let mut d = CMatrix::zeros(dim, dim);
    let mut at = 0;
    for b in &diag_blocks {
        let m = b.nrows();
        d.view_mut((at, at), (m, m)).copy_from(b);
        at += m;
    }
    let inv = basis
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::NumericalRank("singular eigenbasis".into()))?;
    let x = (&basis * d * inv).map(|z| z.re);
    let gen = ConeGenerator::new(x)?;
    if gen.membership != Membership::Interior {
        return Err(Error::NumericalRank("logarithm left the open cone".into()));
    }
    Ok(gen)
}

/// log(M) for M close to lambda * I, branch with arg(lambda) in (-pi, pi).
fn log_near_scalar(m: &CMatrix, lambda: Complex64) -> Result<CMatrix> {
    let k = m.nrows();
    let id = CMatrix::identity(k, k);
    let e = m / lambda - &id;
    if e.norm() > 0.5 {
        return Err(Error::NumericalRank("cluster restriction far from scalar".into()));
    }
    let mut acc = &id * lambda.ln();
    let mut term = id.clone();
    for j in 1..200 {
        term = &term * &e;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        let inc = &term * Complex64::new(sign / j as f64, 0.0);
        let small = inc.norm() < 1e-18;
        acc += inc;
        if small {
            break;
        }
    }
    Ok(acc)
}
