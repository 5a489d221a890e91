//! Seeded random timelike schedules and elliptic truncation.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use symplectic_core::linalg::sym_eigenvalues;
use symplectic_core::random::{random_spd, random_symmetric};
use symplectic_core::{is_positively_elliptic, SampledSymplecticPath};

use crate::schedule::GeneratorSchedule;

/// S(t) = A + B sin(w1 t) + C cos(w2 t) with A shifted so that S(t) >= floor.
/// Draw order: A, B, C, w1, w2.
pub fn random_timelike_schedule(n: usize, t_end: f64, floor: f64, rng: &mut ChaCha8Rng) -> GeneratorSchedule {
    let dim = 2 * n;
    let a = random_spd(dim, 0.0, rng);
    let b = random_symmetric(dim, rng) * 0.5;
    let c = random_symmetric(dim, rng) * 0.5;
    let w1: f64 = rng.random_range(0.5..4.0);
    let w2: f64 = rng.random_range(0.5..4.0);
    let spec = |m: &DMatrix<f64>| sym_eigenvalues(m).iter().fold(0.0f64, |x, e| x.max(e.abs()));
    let shift = (floor - sym_eigenvalues(&a)[0] + spec(&b) + spec(&c)).max(0.0);
    let a = a + DMatrix::identity(dim, dim) * shift;
    GeneratorSchedule::from_fn(n, t_end, move |t| &a + &b * (w1 * t).sin() + &c * (w2 * t).cos())
}

/// Longest prefix whose nodes after the first are positively elliptic.
pub fn elliptic_prefix(path: &SampledSymplecticPath) -> SampledSymplecticPath {
    let mut keep = 1;
    while keep < path.len() && is_positively_elliptic(&path.matrices[keep]) {
        keep += 1;
    }
    SampledSymplecticPath {
        grid: path.grid[..keep].to_vec(),
        matrices: path.matrices[..keep].to_vec(),
        generators: path.generators.as_ref().map(|g| g[..keep].to_vec()),
        meta: path.meta,
    }
}
