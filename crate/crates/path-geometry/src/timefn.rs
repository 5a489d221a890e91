//! Time function f(w) = mu(w) + eps sum_j 2^{-j} arctan mu(w w_j^{-1}) on the
//! universal cover, evaluated along sampled paths from the identity.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symplectic_core::linalg::j0;
use symplectic_core::random::random_hamiltonian;
use symplectic_core::{expm, maslov_lift, maslov_lift_from, SampledSymplecticPath};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeFunctionParams {
    pub eps: f64,
    pub terms: usize,
    pub seed: u64,
}

impl Default for TimeFunctionParams {
    fn default() -> Self {
        Self { eps: 1e-2, terms: 16, seed: 0x5eed }
    }
}

/// Reference elements w_j = [s -> exp(s Z_j)], s in [0, 1]. Draw order per j:
/// a rotation amount c_j ~ U(0, 2 pi), then the Hamiltonian perturbation.
pub fn reference_generators(n: usize, params: &TimeFunctionParams) -> Vec<DMatrix<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    (0..params.terms)
        .map(|_| {
            let c: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            j0(n) * c + random_hamiltonian(n, 0.5, &mut rng)
        })
        .collect()
}

/// Lift of mu(W(t_k) w^{-1}) for every node, where w = [s -> exp(s Z)].
fn lift_right_translate(path: &SampledSymplecticPath, z: &DMatrix<f64>) -> Result<Vec<f64>> {
    let dim = 2 * path.n();
    let pre_nodes = 64;
    let mut pre = Vec::with_capacity(pre_nodes + 1);
    for k in 0..=pre_nodes {
        pre.push(expm(&(z * (-(k as f64) / pre_nodes as f64))));
    }
    let first = maslov_lift_from(&pre, 0.0)?;
    let winv = pre.last().unwrap().clone();
    debug_assert_eq!(winv.nrows(), dim);
    let translated: Vec<DMatrix<f64>> = path.matrices.iter().map(|w| w * &winv).collect();
    Ok(maslov_lift_from(&translated, first.final_value())?.mu_values)
}

/// Values of the time function at every node of a path starting at id.
pub fn time_function_along(path: &SampledSymplecticPath, params: &TimeFunctionParams) -> Result<Vec<f64>> {
    let mu = maslov_lift(path)?.mu_values;
    let mut f = mu.clone();
    let mut weight = 1.0;
    for z in reference_generators(path.n(), params) {
        weight *= 0.5;
        let m = lift_right_translate(path, &z)?;
        for (fk, mk) in f.iter_mut().zip(&m) {
            *fk += params.eps * weight * mk.atan();
        }
    }
    if f.iter().zip(&mu).any(|(a, b)| (a - b).abs() >= params.eps * std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain("time function left the eps band around mu".into()));
    }
    Ok(f)
}

/// Time function at the end point of the path.
pub fn time_function(path: &SampledSymplecticPath, params: &TimeFunctionParams) -> Result<f64> {
    Ok(*time_function_along(path, params)?.last().unwrap())
}
