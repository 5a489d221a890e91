use std::process::ExitCode;

use clap::Parser;
use experiment_cli::{run_main, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_main(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
