use std::process::ExitCode;

use clap::Parser;

use port_tfidf_cli::args::Cli;
use port_tfidf_cli::commands;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
