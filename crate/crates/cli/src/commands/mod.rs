mod ingest;
mod scan;
mod sweep;
mod synth;
mod wave;

use crate::args::{Cli, Command};
use crate::error::CliError;

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ingest(args) => ingest::run(args),
        Command::Sweep(args) => sweep::run(args),
        Command::Scan(args) => scan::run(args),
        Command::Wave(args) => wave::run(args),
        Command::Synth(args) => synth::run(args),
    }
}
