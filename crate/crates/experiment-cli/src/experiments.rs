//! One function per subcommand, each producing experiment records.

use std::f64::consts::PI;

use circle_dynamics::flow::{DEFAULT_GRID, DEFAULT_STEPS};
use circle_dynamics::leonid::ENDPOINT_TOL;
use circle_dynamics::quantum::LENGTH_TOL;
use circle_dynamics::{
    diff1_time_function, flow_times, flow_with, jk_embed, long_circle_path, metric_v, nazarov_check,
    quantum_bound_check, random_fejer_riesz, random_pk_path, random_positive_trig, rescale_to_displacement,
    second_variation_circle, translation_number, CircleHamiltonianPath, FlowMethod, FlowOptions,
};
use convex_extension::{
    fiberwise_length_identity, ruelle_maslov_average, varthm_check, ConvexHamiltonianGrid, ConvexHamiltonianPath,
    GridDomain, Sampling,
};
use nalgebra::DMatrix;
use path_geometry::{
    ads3_chart, ads3_inverse, coindex_discretized, conjugate_instants_closed_form, conjugate_multiplicity_numeric,
    elliptic_length_bound_check, elliptic_prefix, geodesic, integrate_path, krein_angle_tracks, length_g_path,
    length_g_schedule, long_path_construct, random_timelike_schedule, standard_coindex, time_function_along,
    AdS3Point, TimeFunctionParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symplectic_core::linalg::j0;
use symplectic_core::random::{random_spd, random_symplectic, symplectic_inverse};
use symplectic_core::{expm, is_symplectic, maslov_lift, ConeGenerator, PathMeta, SampledSymplecticPath};

use crate::cli::{Command, Common};
use crate::error::{CliError, Result};
use crate::expr::Expr;
use crate::record::ExperimentResult;

/// Relative slack used by the Holder check of the boundary functional.
const HOLDER_TOL: f64 = 1e-8;
/// Slack of the averaged Maslov length bound.
const RUELLE_TOL: f64 = 1e-6;

pub fn run_experiment(c: &Common, cmd: &Command) -> Result<Vec<ExperimentResult>> {
    match cmd {
        Command::Coindex { theta, elements } => coindex(c, theta, elements),
        Command::Conjugate { theta } => conjugate(c, theta.as_deref()),
        Command::Length {} => length(c),
        Command::Maslov { random } => maslov(c, *random),
        Command::Distbound { geodesic, theta } => distbound(c, *geodesic, *theta),
        Command::Longpath { length, lambda, target_tau } => longpath(c, *length, *lambda, *target_tau),
        Command::Ads3 { phi, theta, tau } => ads3(c, *phi, *theta, *tau),
        Command::Timefn { circle, k, eps, terms } => timefn(c, *circle, *k, *eps, *terms),
        Command::CircleFlow { h } => circle_flow(c, h),
        Command::Rotnumb { h, k, iterations } => rotnumb(c, h.as_deref(), *k, *iterations),
        Command::Nazarov { k, extremal } => nazarov(c, *k, *extremal),
        Command::Quantum { k, s, fraction } => quantum(c, *k, *s, *fraction),
        Command::JkEmbed { k, a, b, c: cc } => jk(c, *k, *a, *b, *cc),
        Command::CircleLong { k, eps, length } => circle_long(c, *k, *eps, *length),
        Command::Secondvar { m, l } => secondvar(c, *m, *l),
        Command::MaG { a } => ma_g(c, *a),
        Command::MaVarthm { a } => ma_varthm(c, *a),
        Command::Fiberwise { samples, twist, theta, random } => fiberwise(c, *samples, *theta, *twist, *random),
        Command::Ruelle { samples, twist, theta, random } => ruelle(c, *samples, *theta, *twist, *random),
        Command::Sweep { .. } | Command::Plot { .. } => {
            Err(CliError::Invalid(format!("{} is not a single experiment", cmd.name())))
        }
    }
}

fn rng(c: &Common) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(c.seed)
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| CliError::Parse(format!("bad list entry {p:?} in {s:?}"))))
        .collect()
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Invalid(format!("{name} must be positive, got {v}")))
    }
}

fn at_least_one(name: &str, v: usize) -> Result<usize> {
    if v >= 1 {
        Ok(v)
    } else {
        Err(CliError::Invalid(format!("{name} must be at least 1")))
    }
}

fn min_increment(v: &[f64]) -> f64 {
    v.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

fn circle_options(c: &Common, grid: usize, steps: usize) -> Result<FlowOptions> {
    let grid = at_least_one("grid", c.grid.unwrap_or(grid))?;
    let steps = at_least_one("steps", c.steps.unwrap_or(steps))?;
    Ok(FlowOptions { grid, method: FlowMethod::Rk4 { steps } })
}

fn coindex(c: &Common, theta: &str, elements: &str) -> Result<Vec<ExperimentResult>> {
    let n = at_least_one("n", c.n.unwrap_or(1))?;
    let t_end = positive("T", c.t.unwrap_or(2.5 * PI))?;
    let mut thetas: Vec<f64> = parse_list(theta)?;
    if thetas.len() == 1 {
        thetas = vec![thetas[0]; n];
    }
    if thetas.len() != n {
        return Err(CliError::Invalid(format!("{} rates given for n = {n}", thetas.len())));
    }
    let x = ConeGenerator::from_thetas(&thetas)?;
    let closed = conjugate_instants_closed_form(&x, t_end)?.coindex;
    let standard = thetas.iter().all(|&t| t == 1.0).then(|| standard_coindex(n, t_end));
    let mut out = Vec::new();
    for el in parse_list::<usize>(elements)? {
        let rep = coindex_discretized(&x, t_end, at_least_one("elements", el)?)?;
        let mut r = ExperimentResult::new("coindex")
            .param("n", n)
            .param("theta", theta)
            .param("t_end", t_end)
            .param("elements", el);
        r.result("coindex", rep.coindex);
        r.result("closed_form", closed);
        if let Some(s) = standard {
            r.result("standard_formula", s);
        }
        r.result("smallest_positive", rep.smallest_positive.unwrap_or(f64::NAN));
        r.result("boundary_warning", rep.boundary_warning);
        r.check_close("coindex_matches_closed_form", rep.coindex as f64, closed as f64, 0.0);
        out.push(r);
    }
    Ok(out)
}

/// Rates drawn U(0.5, 2.5) per coordinate, redrawn until pairwise separation >= 0.2.
fn random_rates(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let th: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..2.5)).collect();
        let separated = (0..n).all(|i| (i + 1..n).all(|j| (th[i] - th[j]).abs() >= 0.2));
        if separated {
            return th;
        }
    }
}

/// X = A^{-1} X_theta A with A = random_symplectic(n, 0.7); drawn after the rates.
fn conjugated_generator(thetas: &[f64], rng: &mut ChaCha8Rng) -> Result<ConeGenerator> {
    let base = ConeGenerator::from_thetas(thetas)?;
    let a = random_symplectic(thetas.len(), 0.7, rng);
    Ok(ConeGenerator::new(symplectic_inverse(&a) * &base.x * &a)?)
}

fn conjugate(c: &Common, theta: Option<&str>) -> Result<Vec<ExperimentResult>> {
    let n = at_least_one("n", c.n.unwrap_or(2))?;
    let t_end = positive("T", c.t.unwrap_or(3.0 * PI))?;
    let mut rng = rng(c);
    let thetas = match theta {
        Some(s) => parse_list(s)?,
        None => random_rates(n, &mut rng),
    };
    if thetas.len() != n {
        return Err(CliError::Invalid(format!("{} rates given for n = {n}", thetas.len())));
    }
    let x = conjugated_generator(&thetas, &mut rng)?;
    let rep = conjugate_instants_closed_form(&x, t_end)?;
    let mut r = ExperimentResult::new("conjugate").param("n", n).param("t_end", t_end).param("seed", c.seed);
    for (j, t) in thetas.iter().enumerate() {
        r.result(&format!("theta_{j}"), *t);
    }
    let mut mismatches = 0usize;
    for (i, inst) in rep.instants.iter().enumerate() {
        let m = conjugate_multiplicity_numeric(&x, inst.t)?;
        if m != inst.multiplicity {
            mismatches += 1;
        }
        r.result(&format!("instant_{i}"), inst.t);
        r.check_close(&format!("multiplicity_{i}"), m as f64, inst.multiplicity as f64, 0.0);
    }
    r.result("instants", rep.instants.len());
    r.result("mismatches", mismatches);
    r.result("coindex", rep.coindex);
    Ok(vec![r])
}

fn length(c: &Common) -> Result<Vec<ExperimentResult>> {
    let n = at_least_one("n", c.n.unwrap_or(1))?;
    let t_end = positive("T", c.t.unwrap_or(2.0))?;
    let steps = at_least_one("steps", c.steps.unwrap_or((512.0 * t_end).ceil() as usize))?;
    let tol = c.tol.unwrap_or(1e-5);
    let sched = random_timelike_schedule(n, t_end, 0.1, &mut rng(c));
    let exact = length_g_schedule(&sched, 64)?;
    let sampled = length_g_path(&integrate_path(&sched, steps)?)?;
    let mut r = ExperimentResult::new("length").param("n", n).param("t_end", t_end).param("steps", steps).param("seed", c.seed);
    r.result("length_schedule", exact);
    r.result("length_path", sampled);
    r.check_close("path_length_matches_schedule", sampled, exact, tol * exact);
    Ok(vec![r])
}

fn maslov(c: &Common, random: bool) -> Result<Vec<ExperimentResult>> {
    let n = at_least_one("n", c.n.unwrap_or(1))?;
    if !random {
        let steps = at_least_one("steps", c.steps.unwrap_or(1000))?;
        let j = j0(n);
        let grid: Vec<f64> = (0..=steps).map(|k| k as f64 / steps as f64).collect();
        let mats = grid.iter().map(|t| expm(&(&j * (2.0 * PI * t)))).collect();
        let path = SampledSymplecticPath::new(grid, mats, None, PathMeta { order: 0, step: 1.0 / steps as f64 })?;
        let mu = maslov_lift(&path)?.final_value();
        let mut r = ExperimentResult::new("maslov").param("n", n).param("mode", "loop").param("steps", steps);
        r.result("mu", mu);
        r.check_close("loop_mu_equals_n", mu, n as f64, c.tol.unwrap_or(1e-9));
        return Ok(vec![r]);
    }
    let mut rng = rng(c);
    let mut r = ExperimentResult::new("maslov").param("n", n).param("mode", "random").param("seed", c.seed);
    // a causal path (floor 0) for the lift, then a timelike one (floor 0.1) for the Krein angles
    let causal = integrate_path(&random_timelike_schedule(n, 4.0, 0.0, &mut rng), 400)?;
    let lift = maslov_lift(&causal)?;
    let inc = min_increment(&lift.mu_values);
    r.result("mu_final", lift.final_value());
    r.check_ge("mu_nondecreasing", inc, 0.0, 1e-9);
    let timelike = elliptic_prefix(&integrate_path(&random_timelike_schedule(n, 3.0, 0.1, &mut rng), 600)?);
    r.result("elliptic_prefix_nodes", timelike.len());
    let tracks = krein_angle_tracks(&timelike)?;
    if tracks.len() >= 3 {
        // the first node is the identity, where the angles are all zero
        let inc = tracks[1..]
            .windows(2)
            .flat_map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| b - a).collect::<Vec<_>>())
            .fold(f64::INFINITY, f64::min);
        r.check_gt("krein_angles_increase", inc, 0.0);
    }
    Ok(vec![r])
}

fn distbound(c: &Common, geodesic_case: bool, theta: f64) -> Result<Vec<ExperimentResult>> {
    let n = at_least_one("n", c.n.unwrap_or(1))?;
    let t_end = positive("T", c.t.unwrap_or(3.0))?;
    let steps = at_least_one("steps", c.steps.unwrap_or(600))?;
    let tol = c.tol.unwrap_or(1e-6);
    let mut rng = rng(c);
    let mut r = ExperimentResult::new("distbound")
        .param("n", n)
        .param("t_end", t_end)
        .param("geodesic", geodesic_case)
        .param("seed", c.seed);
    if geodesic_case {
        positive("theta", theta)?;
        if theta * t_end >= PI {
            return Err(CliError::Invalid("theta * T must stay below pi".into()));
        }
        let x = conjugated_generator(&vec![theta; n], &mut rng)?;
        let path = geodesic(&x, &DMatrix::identity(2 * n, 2 * n), t_end, steps)?;
        let rep = elliptic_length_bound_check(&path, tol)?;
        r.result("length", rep.length);
        r.result("bound", rep.bound);
        r.check_close("equality_on_geodesic", rep.length, rep.bound, tol);
    } else {
        let sched = random_timelike_schedule(n, t_end, 0.1, &mut rng);
        let path = elliptic_prefix(&integrate_path(&sched, steps)?);
        let rep = elliptic_length_bound_check(&path, tol)?;
        r.result("prefix_end", *path.grid.last().expect("nonempty path"));
        r.result("length", rep.length);
        r.result("bound", rep.bound);
        r.check_le("length_below_angle_bound", rep.length, rep.bound, tol);
    }
    Ok(vec![r])
}

fn longpath(c: &Common, min_length: f64, lambda: f64, target_tau: f64) -> Result<Vec<ExperimentResult>> {
    let nodes = at_least_one("steps", c.steps.unwrap_or(4000))?;
    let tol = c.tol.unwrap_or(1e-6);
    let lambda = positive("lambda", lambda)?;
    let w = DMatrix::from_row_slice(2, 2, &[lambda, 0.0, 0.0, 1.0 / lambda]);
    let target = ads3_inverse(&w, target_tau)?;
    let lp = long_path_construct(&target, min_length, nodes)?;
    let min_eig = lp.min_eig_s.iter().copied().fold(f64::INFINITY, f64::min);
    let mut r = ExperimentResult::new("longpath")
        .param("length", min_length)
        .param("lambda", lambda)
        .param("target_tau", target_tau)
        .param("nodes", nodes);
    r.result("path_length", lp.length);
    r.result("phi_max", lp.phi_max);
    r.result("endpoint_error", lp.endpoint_error);
    r.result("min_eig_s", min_eig);
    r.check_ge("length_at_least_target", lp.length, min_length, 0.0);
    r.check_gt("every_node_timelike", min_eig, 0.0);
    r.check_le("endpoint_error", lp.endpoint_error, 0.0, tol);
    r.series("t", lp.path.grid.clone());
    r.series("phi", lp.coords.iter().map(|p| p.phi).collect());
    r.series("theta", lp.coords.iter().map(|p| p.theta).collect());
    r.series("tau", lp.coords.iter().map(|p| p.tau).collect());
    r.series("min_eig_s", lp.min_eig_s.clone());
    Ok(vec![r])
}

fn ads3(c: &Common, phi: f64, theta: f64, tau: f64) -> Result<Vec<ExperimentResult>> {
    let tol = c.tol.unwrap_or(1e-10);
    let p = AdS3Point { phi, theta, tau };
    let w = ads3_chart(&p)?;
    let q = ads3_inverse(&w, tau)?;
    let back = ads3_chart(&q)?;
    let mut r = ExperimentResult::new("ads3").param("phi", phi).param("theta", theta).param("tau", tau);
    r.result("symplectic", is_symplectic(&w, 1e-12)?);
    r.result("phi_back", q.phi);
    r.result("theta_back", q.theta);
    r.result("tau_back", q.tau);
    r.check_le("matrix_round_trip", (back - &w).norm(), 0.0, tol);
    r.check_le("tau_round_trip", (q.tau - tau).abs(), 0.0, tol);
    r.check_le("phi_round_trip", (q.phi - phi).abs(), 0.0, tol);
    Ok(vec![r])
}

fn timefn(c: &Common, circle: bool, k: usize, eps: f64, terms: usize) -> Result<Vec<ExperimentResult>> {
    let mut rng = rng(c);
    if circle {
        let k = at_least_one("k", k)?;
        let h = random_pk_path(k, &mut rng);
        let opts = circle_options(c, 64, 1024)?;
        let times: Vec<f64> = (0..=20).map(|i| h.t_end * i as f64 / 20.0).collect();
        let lifts = flow_times(&h, &times, &opts)?;
        let f: Vec<f64> = lifts.iter().map(diff1_time_function).collect();
        let mut r = ExperimentResult::new("timefn").param("space", "circle").param("k", k).param("seed", c.seed);
        r.result("final_value", *f.last().expect("nonempty"));
        r.check_gt("strictly_increasing", min_increment(&f), 0.0);
        return Ok(vec![r]);
    }
    let n = at_least_one("n", c.n.unwrap_or(1))?;
    let t_end = positive("T", c.t.unwrap_or(3.0))?;
    let steps = at_least_one("steps", c.steps.unwrap_or(300))?;
    positive("eps", eps)?;
    at_least_one("terms", terms)?;
    let path = integrate_path(&random_timelike_schedule(n, t_end, 0.1, &mut rng), steps)?;
    let params = TimeFunctionParams { eps, terms, seed: c.seed };
    let f = time_function_along(&path, &params)?;
    let mut r = ExperimentResult::new("timefn")
        .param("space", "symplectic")
        .param("n", n)
        .param("t_end", t_end)
        .param("eps", eps)
        .param("terms", terms)
        .param("seed", c.seed);
    r.result("final_value", *f.last().expect("nonempty"));
    r.result("mu_final", maslov_lift(&path)?.final_value());
    r.check_gt("strictly_increasing", min_increment(&f), 0.0);
    Ok(vec![r])
}

fn circle_path(e: &Expr, t_end: f64) -> CircleHamiltonianPath {
    let e = e.clone();
    if e.is_autonomous() {
        CircleHamiltonianPath::autonomous(t_end, move |x| e.eval(0.0, x))
    } else {
        CircleHamiltonianPath::from_fn(t_end, move |t, x| e.eval(t, x))
    }
}

fn circle_flow(c: &Common, h: &str) -> Result<Vec<ExperimentResult>> {
    let t_end = positive("T", c.t.unwrap_or(1.0))?;
    let e = Expr::parse(h)?;
    let path = circle_path(&e, t_end);
    let opts = circle_options(c, DEFAULT_GRID, DEFAULT_STEPS)?;
    let min_h = path.min_on_grid(64, 256);
    let phi = flow_with(&path, t_end, &opts)?;
    let mut r = ExperimentResult::new("circle-flow").param("h", h).param("t_end", t_end).param("grid", opts.grid);
    r.result("min_h", min_h);
    r.result("mean_displacement", phi.mean_displacement());
    r.result("max_displacement", phi.max_displacement(8));
    r.result("min_displacement", phi.min_displacement(8));
    r.result("translation_number", translation_number(&phi, 4096).rho);
    r.check_gt("positive_hamiltonian", min_h, 0.0);
    Ok(vec![r])
}

fn rotnumb(c: &Common, h: Option<&str>, k: usize, iterations: usize) -> Result<Vec<ExperimentResult>> {
    let t_end = positive("T", c.t.unwrap_or(1.0))?;
    let tol = c.tol.unwrap_or(1e-6);
    let opts = circle_options(c, DEFAULT_GRID, DEFAULT_STEPS)?;
    let iterations = at_least_one("iterations", iterations)?;
    let mut r = ExperimentResult::new("rotnumb").param("t_end", t_end);
    let (path, v) = match h {
        Some(src) => {
            let e = Expr::parse(src)?;
            if !e.is_autonomous() {
                return Err(CliError::Invalid("rotnumb needs an autonomous Hamiltonian".into()));
            }
            r = r.param("h", src);
            let v = metric_v(&|x| e.eval(0.0, x))?;
            (circle_path(&e, t_end), v)
        }
        None => {
            let k = at_least_one("k", k)?;
            r = r.param("k", k).param("seed", c.seed);
            let p = random_positive_trig(k, &mut rng(c));
            let v = metric_v(&|x| p.eval(x))?;
            (CircleHamiltonianPath::autonomous_trig(t_end, p), v)
        }
    };
    let phi = flow_with(&path, t_end, &opts)?;
    let est = translation_number(&phi, iterations);
    r.result("rho", est.rho);
    r.result("rho_error", est.error);
    r.result("v", v);
    r.check_close("rho_equals_t_v", est.rho, t_end * v, tol);
    Ok(vec![r])
}

fn nazarov(c: &Common, k: usize, extremal: bool) -> Result<Vec<ExperimentResult>> {
    let k = at_least_one("k", k)?;
    let tol = c.tol.unwrap_or(1e-10);
    let p = if extremal { circle_dynamics::nazarov::extremal(k) } else { random_fejer_riesz(k, &mut rng(c)) };
    let rep = nazarov_check(&p)?;
    let mut r = ExperimentResult::new("nazarov").param("k", k).param("extremal", extremal);
    if !extremal {
        r = r.param("seed", c.seed);
    }
    r.result("lhs", rep.lhs);
    r.result("rhs", rep.rhs);
    r.result("min_value", rep.min_value);
    r.check_le("nazarov_inequality", rep.lhs, rep.rhs, tol * rep.rhs);
    if extremal {
        r.check_close("extremal_equality", rep.lhs, rep.rhs, tol * rep.rhs);
    }
    Ok(vec![r])
}

fn quantum(c: &Common, k: usize, s: f64, fraction: f64) -> Result<Vec<ExperimentResult>> {
    let k = at_least_one("k", k)?;
    if !(s > 0.0 && s < 1.0) {
        return Err(CliError::Invalid(format!("s = {s} outside (0, 1)")));
    }
    positive("fraction", fraction)?;
    let h = random_pk_path(k, &mut rng(c));
    let h = rescale_to_displacement(&h, fraction * s / (4.0 * k as f64), 1e-4)?;
    let opts = circle_options(c, 128, 512)?;
    let rep = quantum_bound_check(&h, k, s, &opts)?;
    let mut r = ExperimentResult::new("quantum").param("k", k).param("s", s).param("fraction", fraction).param("seed", c.seed);
    r.result("max_displacement", rep.max_displacement);
    r.result("threshold", rep.threshold);
    r.result("hypothesis_holds", rep.hypothesis_holds);
    r.result("length", rep.length);
    r.result("bound", rep.bound);
    r.result("margin", rep.margin);
    if rep.pass.is_some() {
        r.check_le("length_bound", rep.length, rep.bound, LENGTH_TOL);
    }
    Ok(vec![r])
}

fn jk(c: &Common, k: usize, a: Option<f64>, b: Option<f64>, cc: Option<f64>) -> Result<Vec<ExperimentResult>> {
    let k = at_least_one("k", k)?;
    let tol = c.tol.unwrap_or(1e-8);
    let mut r = ExperimentResult::new("jk-embed").param("k", k);
    let s = match (a, b, cc) {
        (Some(a), Some(b), Some(cc)) => DMatrix::from_row_slice(2, 2, &[a, b, b, cc]),
        (None, None, None) => {
            r = r.param("seed", c.seed);
            random_spd(2, 0.05, &mut rng(c))
        }
        _ => return Err(CliError::Invalid("give all of --a --b --c or none".into())),
    };
    let poly = jk_embed(&s, k)?;
    let v = metric_v(&|x| poly.eval(x))?;
    let det_root = s.determinant().sqrt();
    r.result("s_11", s[(0, 0)]);
    r.result("s_12", s[(0, 1)]);
    r.result("s_22", s[(1, 1)]);
    r.result("v", v);
    r.result("det_root", det_root);
    r.check_close("v_times_k_pi_is_det_root", v * k as f64 * PI, det_root, tol * det_root.max(1.0));
    Ok(vec![r])
}

fn circle_long(_c: &Common, k: usize, eps: f64, length: f64) -> Result<Vec<ExperimentResult>> {
    let k = at_least_one("k", k)?;
    positive("eps", eps)?;
    positive("length", length)?;
    let lp = long_circle_path(k, eps, length)?;
    let mut r = ExperimentResult::new("circle-long").param("k", k).param("eps", eps).param("length", length);
    r.result("path_length", lp.length);
    r.result("max_displacement", lp.max_displacement);
    r.result("endpoint_bound", lp.endpoint_bound);
    r.result("delta", lp.delta);
    r.result("c", lp.c);
    r.check_ge("length_at_least_target", lp.length, length, 0.0);
    r.check_le("endpoint_below_bound", lp.max_displacement, lp.endpoint_bound, ENDPOINT_TOL);
    Ok(vec![r])
}

fn secondvar(c: &Common, m: usize, l: usize) -> Result<Vec<ExperimentResult>> {
    let t_end = positive("T", c.t.unwrap_or(PI))?;
    let sv = second_variation_circle(t_end, m, at_least_one("l", l)?)?;
    let mut r = ExperimentResult::new("secondvar").param("t_end", t_end).param("m", m).param("l", l);
    r.result("positive", sv.positive);
    r.result("negative", sv.negative);
    r.result("zero", sv.zero);
    r.result("max_eigenvalue", sv.max_eigenvalue());
    r.result("min_eigenvalue", sv.min_eigenvalue());
    r.check_gt("has_positive_direction", sv.max_eigenvalue(), 1e-6);
    r.check_le("has_negative_direction", sv.min_eigenvalue(), -1e-6, 0.0);
    Ok(vec![r])
}

fn quartic_value(a: f64) -> impl Fn([f64; 2]) -> f64 {
    move |z| 0.5 * (z[0] * z[0] + z[1] * z[1]) + a * (z[0].powi(4) + z[1].powi(4))
}

fn disk(c: &Common, default_cells: usize) -> Result<GridDomain> {
    Ok(GridDomain::unit_disk(at_least_one("grid", c.grid.unwrap_or(default_cells))?)?)
}

fn ma_g(c: &Common, a: f64) -> Result<Vec<ExperimentResult>> {
    let d = disk(c, 128)?;
    let g = ConvexHamiltonianGrid::sample(&d, quartic_value(a));
    let mut r = ExperimentResult::new("ma-g").param("a", a).param("grid", d.cells / 2);
    r.result("h", d.h);
    r.result("min_hess_eig", g.min_hess_eig);
    r.check_gt("uniformly_convex", g.min_hess_eig, 0.0);
    if g.is_uniformly_convex() {
        r.result("g_cal", g.functional_g()?);
        r.result("v_cal", g.functional_v_slice()?);
        r.result("det_rel_std", g.det_relative_std());
    }
    Ok(vec![r])
}

fn ma_varthm(c: &Common, a: f64) -> Result<Vec<ExperimentResult>> {
    let d = disk(c, 128)?;
    let t_end = positive("T", c.t.unwrap_or(1.0))?;
    let rep = varthm_check(&ConvexHamiltonianPath::quartic(t_end, a), &d)?;
    let mut r = ExperimentResult::new("ma-varthm").param("a", a).param("t_end", t_end).param("grid", d.cells / 2);
    r.result("length", rep.length);
    r.result("v", rep.v);
    r.result("gap", rep.gap);
    r.result("ma_tol", rep.ma_tol);
    r.result("max_det_rel_std", rep.max_det_rel_std);
    r.result("equality_flag", rep.equality_flag);
    r.check_le("holder", rep.length, rep.v, HOLDER_TOL * rep.v.abs());
    if a == 0.0 {
        r.check_le("equality_gap", rep.gap.abs(), rep.ma_tol, 0.0);
    }
    Ok(vec![r])
}

/// f(s) = theta s + twist s^2 in s = |z|^2 / 2.
fn radial_path(t_end: f64, theta: f64, twist: f64) -> ConvexHamiltonianPath {
    ConvexHamiltonianPath::radial(t_end, move |s| theta * s + twist * s * s, move |s| theta + 2.0 * twist * s, move |_| 2.0 * twist)
}

fn sampling(c: &Common, random: bool) -> Sampling {
    if random {
        Sampling::Random { seed: c.seed }
    } else {
        Sampling::Halton
    }
}

fn fiberwise(c: &Common, samples: usize, theta: f64, twist: f64, random: bool) -> Result<Vec<ExperimentResult>> {
    let d = disk(c, 128)?;
    let t_end = positive("T", c.t.unwrap_or(1.0))?;
    let samples = at_least_one("samples", samples)?;
    let tol = c.tol.unwrap_or(0.02);
    let rep = fiberwise_length_identity(&radial_path(t_end, theta, twist), &d, samples, sampling(c, random))?;
    let mut r = ExperimentResult::new("fiberwise")
        .param("samples", samples)
        .param("theta", theta)
        .param("twist", twist)
        .param("t_end", t_end)
        .param("grid", d.cells / 2)
        .param("sampling", if random { "random" } else { "halton" });
    if random {
        r = r.param("seed", c.seed);
    }
    r.result("pointwise_average", rep.lhs_average);
    r.result("length_g_cal", rep.rhs);
    r.result("rel_diff", rep.rel_diff);
    r.check_le("relative_discrepancy", rep.rel_diff, 0.0, tol);
    Ok(vec![r])
}

fn ruelle(c: &Common, samples: usize, theta: f64, twist: f64, random: bool) -> Result<Vec<ExperimentResult>> {
    let d = disk(c, 64)?;
    let t_end = positive("T", c.t.unwrap_or(0.8))?;
    let samples = at_least_one("samples", samples)?;
    let rep = ruelle_maslov_average(&radial_path(t_end, theta, twist), &d, samples, sampling(c, random))?;
    let mut r = ExperimentResult::new("ruelle")
        .param("samples", samples)
        .param("theta", theta)
        .param("twist", twist)
        .param("t_end", t_end)
        .param("grid", d.cells / 2);
    if random {
        r = r.param("seed", c.seed);
    }
    r.result("m_cal", rep.m_cal);
    r.result("length_g_cal", rep.length_g_cal);
    r.result("bound", rep.bound);
    r.result("min_dist_to_minus_one", rep.min_dist_to_minus_one);
    r.result("hypothesis_holds", rep.hypothesis_holds);
    if rep.pass.is_some() {
        r.check_le("length_below_bound", rep.length_g_cal, rep.bound, RUELLE_TOL);
    }
    Ok(vec![r])
}
