use std::f64::consts::PI;

use nalgebra::DMatrix;
use path_geometry::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symplectic_core::linalg::j0;
use symplectic_core::random::{random_hamiltonian, random_symplectic, symplectic_inverse};
use symplectic_core::{expm, is_symplectic, maslov_lift, ConeGenerator};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_generator(n: usize, thetas: &[f64], r: &mut ChaCha8Rng) -> ConeGenerator {
    let a = random_symplectic(n, 0.7, r);
    let x = symplectic_inverse(&a) * blocks(thetas) * &a;
    ConeGenerator::new(x).unwrap()
}

fn blocks(thetas: &[f64]) -> DMatrix<f64> {
    let n = thetas.len();
    let mut s = DMatrix::zeros(2 * n, 2 * n);
    for (k, t) in thetas.iter().enumerate() {
        s[(2 * k, 2 * k)] = *t;
        s[(2 * k + 1, 2 * k + 1)] = *t;
    }
    j0(n) * s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integration_stays_on_the_group(seed in any::<u64>(), n in 1usize..3, steps in 1usize..400) {
        let mut r = rng(seed);
        let sched = random_timelike_schedule(n, 2.0, 0.1, &mut r);
        let p = integrate_path(&sched, steps).unwrap();
        for w in &p.matrices {
            prop_assert!(is_symplectic(w, 1e-10 * w.norm().powi(2).max(1.0)).unwrap());
        }
    }

    #[test]
    fn finite_difference_generator_is_second_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sched = random_timelike_schedule(2, 1.0, 0.1, &mut r);
        let err = |steps: usize| {
            let p = integrate_path(&sched, steps).unwrap();
            let h = 1.0 / steps as f64;
            let mut worst: f64 = 0.0;
            for k in 0..steps {
                let fd = (&p.matrices[k + 1] - &p.matrices[k]) / h * symplectic_inverse(&p.matrices[k]);
                let mid = j0(2) * sched.eval((k as f64 + 0.5) * h);
                // forward difference at t_k approximates X(t_k + h/2) up to O(h)
                worst = worst.max((fd - mid).norm());
            }
            worst
        };
        let (a, b) = (err(64), err(128));
        prop_assert!(b < 0.6 * a);
    }

    #[test]
    fn length_is_bi_invariant(seed in any::<u64>(), n in 1usize..3) {
        let mut r = rng(seed);
        let sched = random_timelike_schedule(n, 1.5, 0.2, &mut r);
        let p = integrate_path(&sched, 200).unwrap();
        let bare = symplectic_core::SampledSymplecticPath { generators: None, ..p.clone() };
        let a = random_symplectic(n, 0.6, &mut r);
        let b = random_symplectic(n, 0.6, &mut r);
        let moved = p.transformed(&a, &b);
        let l0 = length_g_path(&bare).unwrap();
        let l1 = length_g_path(&moved).unwrap();
        prop_assert!((l0 - l1).abs() < 1e-8 * l0.max(1.0));
        let lg = length_g_path(&p).unwrap();
        prop_assert!((l0 - lg).abs() < 1e-3 * lg);
    }

    #[test]
    fn krein_positive_angles_increase(seed in any::<u64>(), n in 1usize..3) {
        let mut r = rng(seed);
        let sched = random_timelike_schedule(n, 3.0, 0.1, &mut r);
        let p = elliptic_prefix(&integrate_path(&sched, 600).unwrap());
        prop_assume!(p.len() > 3);
        let tracks = krein_angle_tracks(&p).unwrap();
        for w in tracks[1..].windows(2) {
            for (a, b) in w[0].iter().zip(&w[1]) {
                prop_assert!(b > a, "angles {:?} -> {:?}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn numeric_multiplicity_matches_closed_form(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t1: f64 = r.random_range(0.5..2.5);
        let t2: f64 = r.random_range(0.5..2.5);
        prop_assume!((t1 - t2).abs() >= 0.2);
        let x = random_generator(2, &[t1, t2], &mut r);
        let rep = conjugate_instants_closed_form(&x, 2.0 * PI).unwrap();
        for c in &rep.instants {
            prop_assert_eq!(conjugate_multiplicity_numeric(&x, c.t).unwrap(), c.multiplicity);
        }
        // a generic instant away from all listed ones has trivial kernel
        let mut probe = 0.37;
        while rep.instants.iter().any(|c| (c.t - probe).abs() < 1e-2) { probe += 0.05; }
        prop_assert_eq!(conjugate_multiplicity_numeric(&x, probe).unwrap(), 0);
    }

    #[test]
    fn jacobi_fields_solve_the_jacobi_equation(seed in any::<u64>(), n in 1usize..3) {
        let mut r = rng(seed);
        let x = ConeGenerator::from_hessian(symplectic_core::random::random_spd(2 * n, 0.3, &mut r)).unwrap();
        let z = random_hamiltonian(n, 1.0, &mut r);
        let t: f64 = r.random_range(0.3..3.0);
        let h = 1e-3;
        let y = |s: f64| jacobi_field(&x, &z, s).unwrap();
        let y1 = (y(t + h) - y(t - h)) / (2.0 * h);
        let y2 = (y(t + h) - y(t) * 2.0 + y(t - h)) / (h * h);
        let res = (&y2 - (&x.x * &y1 - &y1 * &x.x)).norm();
        prop_assert!(res <= 1e-6 * (1.0 + x.x.norm().powi(2) * z.norm()), "residual {res}");
    }

    #[test]
    fn elliptic_bound_holds(seed in any::<u64>(), n in 1usize..3) {
        let mut r = rng(seed);
        let sched = random_timelike_schedule(n, 3.0, 0.1, &mut r);
        let p = elliptic_prefix(&integrate_path(&sched, 600).unwrap());
        prop_assume!(p.len() > 3);
        let rep = elliptic_length_bound_check(&p, 1e-6).unwrap();
        prop_assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn maslov_monotone_on_causal_paths(seed in any::<u64>(), n in 1usize..3) {
        let mut r = rng(seed);
        let sched = random_timelike_schedule(n, 4.0, 0.0, &mut r);
        let p = integrate_path(&sched, 400).unwrap();
        let lift = maslov_lift(&p).unwrap();
        for w in lift.mu_values.windows(2) {
            prop_assert!(w[1] - w[0] >= -1e-9);
        }
    }

    #[test]
    fn time_function_stays_near_mu(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sched = random_timelike_schedule(1, 3.0, 0.1, &mut r);
        let p = integrate_path(&sched, 300).unwrap();
        let params = TimeFunctionParams { seed, ..Default::default() };
        let f = time_function_along(&p, &params).unwrap();
        let mu = maslov_lift(&p).unwrap().mu_values;
        for (a, b) in f.iter().zip(&mu) {
            prop_assert!((a - b).abs() < params.eps * PI / 2.0);
        }
    }
}

#[test]
fn first_variation_vanishes_only_on_geodesics() {
    let s = DMatrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.0]);
    let geo = GeneratorSchedule::constant(s.clone(), 2.0);
    let fv = first_variation(&geo, 32).unwrap();
    assert!(fv.amax() <= 1e-8);
    let bent = GeneratorSchedule::from_fn(1, 2.0, move |t| {
        let r = expm(&(j0(1) * t));
        &r * &s * r.transpose()
    });
    // rotating the Hessian frame is not a reparametrized geodesic
    let fv = first_variation(&bent, 32).unwrap();
    assert!(fv.amax() > 1e-3);
    // a pure time reparametrization still has vanishing first variation
    let reparam = GeneratorSchedule::from_fn(1, 2.0, |t| DMatrix::identity(2, 2) * (1.0 + t * t));
    assert!(first_variation(&reparam, 32).unwrap().amax() <= 1e-8);
}

#[test]
fn coindex_stabilizes_for_n_one() {
    let x = ConeGenerator::new(j0(1)).unwrap();
    for &(t, expected) in &[(2.5 * PI, 4), (0.9 * PI, 0), (1.5 * PI, 2)] {
        let a = coindex_discretized(&x, t, 64).unwrap().coindex;
        let b = coindex_discretized(&x, t, 128).unwrap().coindex;
        assert_eq!(a, expected);
        assert_eq!(b, expected);
        assert_eq!(standard_coindex(1, t), expected);
    }
}
