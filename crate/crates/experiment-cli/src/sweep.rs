//! Cartesian parameter sweeps with per-run seeds.

use clap::Parser;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cli::{Cli, Command, Common};
use crate::error::{CliError, Result};
use crate::experiments::run_experiment;
use crate::record::ExperimentResult;

/// Seed of run `index`: first word of stream `index` of ChaCha8 keyed by `base`.
pub fn cell_seed(base: u64, index: u64) -> u64 {
    let mut r = ChaCha8Rng::seed_from_u64(base);
    r.set_stream(index);
    r.next_u64()
}

/// Parses `name=v1,v2,...`.
pub fn parse_vary(spec: &str) -> Result<(String, Vec<String>)> {
    let (name, values) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Parse(format!("expected name=v1,v2,... in {spec:?}")))?;
    let name = name.trim().trim_start_matches('-').to_string();
    let values: Vec<String> = values.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
    if name.is_empty() || values.is_empty() {
        return Err(CliError::Invalid(format!("empty grid in {spec:?}")));
    }
    Ok((name, values))
}

fn forwarded(common: &Common) -> Vec<String> {
    let mut v = Vec::new();
    let mut push = |k: &str, s: Option<String>| {
        if let Some(s) = s {
            v.push(format!("--{k}"));
            v.push(s);
        }
    };
    push("n", common.n.map(|x| x.to_string()));
    push("T", common.t.map(|x| x.to_string()));
    push("steps", common.steps.map(|x| x.to_string()));
    push("grid", common.grid.map(|x| x.to_string()));
    push("tol", common.tol.map(|x| x.to_string()));
    v
}

/// Runs every grid cell `repeat` times (cells in row-major order, first `--vary` slowest) and
/// appends a summary record. Runs execute in parallel; records keep grid order.
pub fn sweep(common: &Common, experiment: &str, vary: &[String], repeat: usize, rest: &[String]) -> Result<Vec<ExperimentResult>> {
    if repeat == 0 {
        return Err(CliError::Invalid("empty grid: repeat must be at least 1".into()));
    }
    let axes = vary.iter().map(|s| parse_vary(s)).collect::<Result<Vec<_>>>()?;
    let mut cells: Vec<Vec<(String, String)>> = vec![Vec::new()];
    for (name, values) in &axes {
        cells = cells
            .iter()
            .flat_map(|cell| {
                values.iter().map(move |v| {
                    let mut c = cell.clone();
                    c.push((name.clone(), v.clone()));
                    c
                })
            })
            .collect();
    }
    let mut runs = Vec::with_capacity(cells.len() * repeat);
    for (ci, cell) in cells.iter().enumerate() {
        for rep in 0..repeat {
            let index = (ci * repeat + rep) as u64;
            let mut argv = vec!["experiment-cli".to_string(), experiment.to_string()];
            argv.extend(forwarded(common));
            argv.extend(rest.iter().cloned());
            for (k, v) in cell {
                argv.push(format!("--{k}"));
                argv.push(v.clone());
            }
            argv.push("--seed".into());
            argv.push(cell_seed(common.seed, index).to_string());
            let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::Parse(e.to_string()))?;
            if matches!(cli.command, Command::Sweep { .. } | Command::Plot { .. }) {
                return Err(CliError::Invalid(format!("cannot sweep {experiment}")));
            }
            runs.push((index, cli));
        }
    }
    let outcomes: Vec<Vec<ExperimentResult>> = runs
        .par_iter()
        .map(|(index, cli)| {
            let recs = run_experiment(&cli.common, &cli.command).unwrap_or_else(|e| {
                let mut r = ExperimentResult::new(cli.command.name()).param("seed", cli.common.seed);
                r.result("error", e.to_string());
                r.check_le("ran_without_error", 1.0, 0.0, 0.0);
                vec![r]
            });
            recs.into_iter().map(|r| r.param("sweep_run", *index)).collect()
        })
        .collect();
    let mut out: Vec<ExperimentResult> = outcomes.into_iter().flatten().collect();
    let checked: Vec<&ExperimentResult> = out.iter().filter(|r| !r.checks.is_empty()).collect();
    let passed = checked.iter().filter(|r| r.passed()).count();
    let checks_total: usize = out.iter().map(|r| r.checks.len()).sum();
    let checks_passed: usize = out.iter().map(|r| r.checks.iter().filter(|c| c.pass).count()).sum();
    let mut summary = ExperimentResult::new("sweep")
        .param("experiment", experiment)
        .param("vary", vary.join(" "))
        .param("repeat", repeat)
        .param("seed", common.seed);
    summary.result("runs", runs.len());
    summary.result("records", out.len());
    summary.result("records_with_checks", checked.len());
    summary.result("records_passed", passed);
    summary.result("checks_total", checks_total);
    summary.result("checks_passed", checks_passed);
    let rate = if checked.is_empty() { f64::NAN } else { passed as f64 / checked.len() as f64 };
    summary.result("pass_rate", rate);
    out.push(summary);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vary_specs() {
        assert_eq!(parse_vary("k=1,2").unwrap(), ("k".to_string(), vec!["1".to_string(), "2".to_string()]));
        assert_eq!(parse_vary("--s=0.5").unwrap().0, "s");
        assert!(parse_vary("k=").is_err());
        assert!(parse_vary("k").is_err());
    }

    #[test]
    fn seeds_differ_per_run() {
        let s: Vec<u64> = (0..8).map(|i| cell_seed(7, i)).collect();
        for i in 0..8 {
            for j in 0..i {
                assert_ne!(s[i], s[j]);
            }
        }
        assert_eq!(cell_seed(7, 3), s[3]);
    }
}
