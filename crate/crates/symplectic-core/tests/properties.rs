use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::PI;

use symplectic_core::random::{random_elliptic, random_spd, random_symmetric, random_symplectic, symplectic_inverse};
use symplectic_core::*;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn det_root(s: &DMatrix<f64>) -> f64 {
    s.determinant().powf(1.0 / s.nrows() as f64)
}

fn causal_path(n: usize, seed: u64, nodes: usize, t_end: f64, strict: bool) -> SampledSymplecticPath {
    // Piecewise-constant Hessians; every step is an exact exponential.
    let mut r = rng(seed);
    let dim = 2 * n;
    let h = t_end / (nodes - 1) as f64;
    let a = random_spd(dim, if strict { 0.2 } else { 0.0 }, &mut r);
    let b = random_symmetric(dim, &mut r) * 0.3;
    let mut w = DMatrix::identity(dim, dim);
    let mut mats = vec![w.clone()];
    let mut gens = Vec::new();
    for k in 0..nodes - 1 {
        let t = (k as f64 + 0.5) * h;
        let mut s = &a + &b * (3.0 * t).sin();
        let m = symplectic_core::linalg::min_sym_eigenvalue(&s);
        let floor = if strict { 0.05 } else { 0.0 };
        if m < floor {
            s += DMatrix::identity(dim, dim) * (floor - m);
        }
        gens.push(s.clone());
        w = expm(&(j0(n) * s * h)) * w;
        mats.push(w.clone());
    }
    gens.push(gens.last().unwrap().clone());
    let grid = (0..nodes).map(|k| k as f64 * h).collect();
    SampledSymplecticPath::new(grid, mats, Some(gens), PathMeta { order: 2, step: h }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn metrics_are_conjugation_invariant(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let s = random_spd(2 * n, 0.3, &mut r);
        let x = ConeGenerator::from_hessian(s).unwrap();
        let a = random_symplectic(n, 0.8, &mut r);
        let y = ConeGenerator::new(&a * &x.x * symplectic_inverse(&a)).unwrap();
        let gx = metric_g(&x).unwrap();
        let gy = metric_g(&y).unwrap();
        prop_assert!((gx - gy).abs() <= 1e-10 * gx.max(1.0));
        let hx = metric_h_quadratic_harmonic(&x).unwrap();
        let hy = metric_h_quadratic_harmonic(&y).unwrap();
        prop_assert!((hx - hy).abs() <= 1e-10 * hx.max(1.0));
    }

    #[test]
    fn upsilon_is_conjugation_invariant(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let w = random_symplectic(n, 1.5, &mut r);
        let a = random_symplectic(n, 0.8, &mut r);
        let c = &a * &w * symplectic_inverse(&a);
        match (gelfand_lidskii_upsilon(&w), gelfand_lidskii_upsilon(&c)) {
            (Ok(u), Ok(v)) => prop_assert!((u - v).norm() < 1e-8),
            _ => prop_assume!(false),
        }
    }

    #[test]
    fn g_is_homogeneous(seed in any::<u64>(), n in 1usize..4, c in 0.01f64..100.0) {
        let mut r = rng(seed);
        let x = ConeGenerator::from_hessian(random_spd(2 * n, 0.3, &mut r)).unwrap();
        let xc = ConeGenerator::new(&x.x * c).unwrap();
        let g = metric_g(&x).unwrap();
        prop_assert!((metric_g(&xc).unwrap() - c * g).abs() <= 1e-12 * c * g.max(1.0));
    }

    #[test]
    fn det_root_is_strictly_concave_off_rays(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let dim = 2 * n;
        let s = random_spd(dim, 0.5, &mut r);
        let mut h = random_symmetric(dim, &mut r);
        // remove the component along S so that H is not a multiple of S
        let along = (h.dot(&s)) / s.dot(&s);
        h -= &s * along;
        h /= h.norm();
        let step = 1e-2;
        let d2 = |dir: &DMatrix<f64>| {
            (det_root(&(&s + dir * step)) - 2.0 * det_root(&s) + det_root(&(&s - dir * step))) / (step * step)
        };
        prop_assert!(d2(&h) < -1e-6);
        prop_assert!(d2(&s).abs() < 1e-8);
    }

    #[test]
    fn krein_form_is_hermitian_exactly(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let mut draw = || Complex64::new(StandardNormal.sample(&mut r), StandardNormal.sample(&mut r));
        let u = DMatrix::from_fn(2 * n, 1, |_, _| draw()).column(0).into_owned();
        let v = DMatrix::from_fn(2 * n, 1, |_, _| draw()).column(0).into_owned();
        let a = krein_form(&u, &v).unwrap();
        let b = krein_form(&v, &u).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-14);
    }

    #[test]
    fn signature_bookkeeping(seed in any::<u64>(), n in 1usize..4, scale in 0.1f64..3.0) {
        let mut r = rng(seed);
        let w = random_symplectic(n, scale, &mut r);
        if let Ok(spec) = krein_spectrum(&w) {
            let signed: usize = spec.on_circle.iter().map(|e| e.krein_signature.0 + e.krein_signature.1).sum();
            prop_assert_eq!(signed + spec.off_circle_count(), 2 * n);
            for e in &spec.on_circle {
                prop_assert_eq!(e.krein_signature.0 + e.krein_signature.1, e.alg_mult);
            }
        }
    }

    #[test]
    fn normal_form_matches_determinant(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let s = random_spd(2 * n, 0.2, &mut r);
        let x = ConeGenerator::from_hessian(s.clone()).unwrap();
        let nf = normal_form(&x).unwrap();
        let from_thetas = nf.thetas.iter().map(|t| t.ln()).sum::<f64>() / n as f64;
        prop_assert!((from_thetas.exp() - det_root(&s)).abs() < 1e-10 * det_root(&s).max(1.0));
        prop_assert!((nf.reconstruct() - &x.x).norm() < 1e-9 * x.x.norm().max(1.0));
        prop_assert!(nf.max_cross_pairing() < 1e-9);
        prop_assert!(is_symplectic(&nf.basis(), 1e-9 * nf.basis().norm().powi(2)).unwrap());
    }

    #[test]
    fn elliptic_log_round_trip(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let thetas: Vec<f64> = (0..n).map(|k| 0.3 + 2.5 * ((seed >> (8 * k)) as u8 as f64) / 255.0).collect();
        let w = random_elliptic(&thetas, 0.6, &mut r);
        prop_assert!(is_positively_elliptic(&w));
        let x = log_elliptic(&w).unwrap();
        prop_assert!(x.is_interior());
        prop_assert!((expm(&x.x) - &w).norm() < 1e-10 * w.norm().max(1.0));
    }

    #[test]
    fn lift_is_consistent_and_monotone(seed in any::<u64>(), n in 1usize..3) {
        let path = causal_path(n, seed, 161, 4.0, false);
        let lift = maslov_lift(&path).unwrap();
        for (w, mu) in path.matrices.iter().zip(&lift.mu_values) {
            let u = gelfand_lidskii_upsilon(w).unwrap();
            prop_assert!((u - Complex64::from_polar(1.0, 2.0 * PI * mu)).norm() < 1e-8);
        }
        for d in lift.mu_values.windows(2) {
            prop_assert!(d[1] - d[0] >= -1e-9);
        }
    }
}

#[test]
fn lift_strictly_increases_on_elliptic_geodesics() {
    let x = ConeGenerator::from_thetas(&[1.0, 1.7]).unwrap();
    let nodes = 101;
    let grid: Vec<f64> = (0..nodes).map(|k| 1.5 * k as f64 / (nodes - 1) as f64).collect();
    let mats = grid.iter().map(|t| expm(&(&x.x * *t))).collect();
    let path = SampledSymplecticPath::new(grid, mats, None, PathMeta { order: 0, step: 0.015 }).unwrap();
    let lift = maslov_lift(&path).unwrap();
    for d in lift.mu_values.windows(2) {
        assert!(d[1] > d[0]);
    }
    assert!((lift.final_value() - 1.5 * 2.7 / (2.0 * PI)).abs() < 1e-10);
}

#[test]
fn symplectic_matrix_wrapper_validates() {
    assert!(SymplecticMatrix::new(expm(&(j0(2) * 0.4)), 1e-12).is_ok());
    let d = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
    assert!(SymplecticMatrix::new(d, 1e-12).is_err());
}
