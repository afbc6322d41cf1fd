use std::process::ExitCode;

use clap::Parser;
use involis_cli::args::Cli;
use involis_cli::commands::{emit, execute};

fn main() -> ExitCode {
    // clap exits with status 2 and usage text on flag errors
    let cli = Cli::parse();
    let product = match execute(&cli.command) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&product) {
        eprintln!("error: io: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
