use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    caywalk_cli::run(caywalk_cli::Cli::parse())
}
