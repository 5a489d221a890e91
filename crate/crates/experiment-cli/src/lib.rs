//! Experiment driver: each subcommand wires the library crates into a
//! reproducible run and reports JSON Lines records whose checks decide the
//! exit status.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod expr;
pub mod plot;
pub mod record;
pub mod sweep;

use std::fs;
use std::io::Write;

use clap::Parser;

pub use cli::{Cli, Command, Common, PlotKind};
pub use error::{CliError, Result};
pub use experiments::run_experiment;
pub use plot::emit_plot_data;
pub use record::{Check, ExperimentResult, Value};
pub use sweep::{cell_seed, sweep};

/// Runs a parsed invocation other than `plot`.
pub fn execute(cli: &Cli) -> Result<Vec<ExperimentResult>> {
    match &cli.command {
        Command::Sweep { experiment, vary, repeat, rest } => sweep(&cli.common, experiment, vary, *repeat, rest),
        cmd => run_experiment(&cli.common, cmd),
    }
}

/// Parses `args` (program name first) and runs it.
pub fn run_args<I, T>(args: I) -> Result<Vec<ExperimentResult>>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Parse(e.to_string()))?;
    execute(&cli)
}

fn summary_line(r: &ExperimentResult) -> String {
    let status = if r.checks.is_empty() {
        "REPORT"
    } else if r.passed() {
        "PASS"
    } else {
        "FAIL"
    };
    let mut s = format!("{status} {}", r.experiment);
    for (k, v) in &r.params {
        s.push_str(&format!(" {k}={}", show(v)));
    }
    s.push_str(" |");
    for (k, v) in &r.results {
        s.push_str(&format!(" {k}={}", show(v)));
    }
    for c in &r.checks {
        s.push_str(&format!(
            " | {} {}: {} vs {} (tol {})",
            c.name,
            if c.pass { "ok" } else { "FAILED" },
            record::format_float(c.lhs),
            record::format_float(c.rhs),
            record::format_float(c.tol)
        ));
    }
    s
}

fn show(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Float(x) => record::format_float(*x),
        Value::Bool(b) => b.to_string(),
        Value::Text(t) => t.clone(),
    }
}

/// Full command-line behavior. Returns whether every check passed.
pub fn run_main(cli: &Cli) -> Result<bool> {
    if let Command::Plot { input, kind } = &cli.command {
        let csv = emit_plot_data(&fs::read_to_string(input)?, *kind)?;
        match &cli.common.out {
            Some(p) => fs::write(p, csv)?,
            None => std::io::stdout().write_all(csv.as_bytes())?,
        }
        return Ok(true);
    }
    let records = execute(cli)?;
    let jsonl: String = records.iter().map(|r| r.to_json_line() + "\n").collect();
    if let Some(p) = &cli.common.out {
        fs::write(p, &jsonl)?;
    }
    let mut stdout = std::io::stdout().lock();
    if cli.common.json {
        stdout.write_all(jsonl.as_bytes())?;
    } else if cli.common.out.is_none() {
        for r in &records {
            writeln!(stdout, "{}", summary_line(r))?;
        }
    }
    Ok(records.iter().all(|r| r.passed()))
}
