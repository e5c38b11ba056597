use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

mod cli;

fn main() -> ExitCode {
    let outcome = cli::run(cli::Cli::parse());
    let mut stdout = std::io::stdout().lock();
    // A closed pipe (e.g. `| head`) is not an error of the computation.
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    ExitCode::from(outcome.code)
}
