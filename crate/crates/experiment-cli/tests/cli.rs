use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_experiment-cli")).args(args).output().expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

#[test]
fn coindex_example() {
    let out = cli(&["coindex", "--n", "1", "--theta", "1", "--T", "7.853981633974483", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 2);
    for r in &recs {
        assert_eq!(r["results"]["coindex"].as_i64(), Some(4));
    }
}

#[test]
fn rotation_number_example() {
    let out = cli(&["rotnumb", "--h", "2+cos", "--tol", "1e-6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rho = records(&out)[0]["results"]["rho"].as_f64().unwrap();
    assert!((rho - 3f64.sqrt()).abs() <= 1e-6);
}

#[test]
fn nazarov_example() {
    let out = cli(&["nazarov", "--k", "3", "--extremal", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0]["results"];
    assert!((r["lhs"].as_f64().unwrap() - 12.0).abs() < 1e-10);
    assert!((r["rhs"].as_f64().unwrap() - 12.0).abs() < 1e-10);
}

#[test]
fn exit_codes() {
    // the rotation number matches V to about 1e-12, not 1e-30
    let out = cli(&["rotnumb", "--h", "2+cos", "--tol", "1e-30", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(records(&out)[0]["checks"][0]["pass"], Value::Bool(false));
    assert_eq!(cli(&["quantum", "--s", "1.5"]).status.code(), Some(2));
    assert_eq!(cli(&["nazarov", "--bogus"]).status.code(), Some(2));
    assert_eq!(cli(&["circle-flow", "--h", "2+"]).status.code(), Some(2));
    assert_eq!(cli(&["jk-embed", "--a", "1"]).status.code(), Some(2));
    // a report-only run has no checks and succeeds
    let out = cli(&["quantum", "--k", "1", "--s", "0.5", "--fraction", "1.5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["checks"].as_array().unwrap().len(), 0);
}

#[test]
fn output_is_reproducible() {
    let args = ["conjugate", "--n", "2", "--seed", "42", "--json"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
    let c = cli(&["conjugate", "--n", "2", "--seed", "43", "--json"]);
    assert_ne!(a.stdout, c.stdout);
    let s1 = cli(&["sweep", "jk-embed", "--vary", "k=1,2", "--repeat", "3", "--seed", "5", "--json"]);
    let s2 = cli(&["sweep", "jk-embed", "--vary", "k=1,2", "--repeat", "3", "--seed", "5", "--json"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn floats_have_seventeen_digits() {
    let out = cli(&["jk-embed", "--k", "2", "--a", "2", "--b", "0.5", "--c", "1", "--json"]);
    let line = String::from_utf8(out.stdout).unwrap();
    assert!(line.contains("\"s_11\":2.0000000000000000e0"), "{line}");
}

#[test]
fn sweep_summary_and_errors() {
    let out = cli(&["sweep", "nazarov", "--vary", "k=1,2,3", "--repeat", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 13);
    let ks: Vec<i64> = recs[..12].iter().map(|r| r["params"]["k"].as_i64().unwrap()).collect();
    assert_eq!(ks, [1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3]);
    let summary = &recs[12];
    assert_eq!(summary["experiment"], "sweep");
    assert_eq!(summary["results"]["pass_rate"].as_f64(), Some(1.0));
    assert_eq!(cli(&["sweep", "nazarov", "--vary", "k="]).status.code(), Some(2));
    assert_eq!(cli(&["sweep", "nazarov", "--repeat", "0"]).status.code(), Some(2));
    assert_eq!(cli(&["sweep", "plot"]).status.code(), Some(2));
    // flags after -- reach every run
    let out = cli(&["sweep", "nazarov", "--vary", "k=2", "--json", "--", "--extremal"]);
    assert_eq!(records(&out)[0]["params"]["extremal"], Value::Bool(true));
}

#[test]
fn plot_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();

    assert_eq!(cli(&["longpath", "--length", "10", "--steps", "200", "--out", &path("lp.jsonl")]).status.code(), Some(0));
    let out = cli(&["plot", "--input", &path("lp.jsonl"), "--kind", "longpath"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,phi,theta,tau,min_eig_s"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() > 10);
    assert!(rows.iter().all(|r| r.split(',').count() == 5));

    assert_eq!(cli(&["coindex", "--T", "7.853981633974483", "--out", &path("ci.jsonl")]).status.code(), Some(0));
    let out = cli(&["plot", "--input", &path("ci.jsonl"), "--kind", "coindex", "--out", &path("ci.csv")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(path("ci.csv")).unwrap(), "elements,coindex\n64,4\n128,4\n");

    let out = cli(&["sweep", "ma-varthm", "--vary", "a=0,0.05", "--grid", "16", "--out", &path("va.jsonl")]);
    assert_eq!(out.status.code(), Some(0));
    let out = cli(&["plot", "--input", &path("va.jsonl"), "--kind", "varthm"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("coeff,gap\n0.0000000000000000e0,"));

    // wrong kind for the file
    assert_eq!(cli(&["plot", "--input", &path("ci.jsonl"), "--kind", "varthm"]).status.code(), Some(2));
    assert_eq!(cli(&["plot", "--input", &path("missing.jsonl"), "--kind", "varthm"]).status.code(), Some(2));
}
