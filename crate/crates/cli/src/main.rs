use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use superrational_cli::args::Cli;
use superrational_cli::{format_of, render, run, CliError};

fn execute(cli: &Cli) -> Result<(), CliError> {
    let report = run(cli)?;
    let text = render(&report, format_of(cli))?;
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|e| CliError::Internal(format!("cannot write the report: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| execute(&cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("superrational: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => ExitCode::from(1),
    }
}
