use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = fuchsia::cli::Cli::parse();
    ExitCode::from(fuchsia::cli::run(&cli))
}
