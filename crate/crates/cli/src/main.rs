use std::process::ExitCode;

use clap::Parser;
use trussmerge::args::Cli;
use trussmerge::commands::execute_with_threads;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute_with_threads(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::FAILURE
        }
    }
}
