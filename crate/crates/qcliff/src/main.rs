use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qcliff::commands::execute;
use qcliff::config::{Cli, RunConfig};
use qcliff::CliError;

fn run() -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(Cli::parse())?;
    let out = execute(&cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| CliError::io(path, e))?,
        None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))?,
    }
    Ok(out.failed)
}

/// Exit codes: 0 success, 1 hard failure in the results, 2 invalid input.
fn main() -> ExitCode {
    match run() {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qcliff: {e}");
            ExitCode::from(2)
        }
    }
}
