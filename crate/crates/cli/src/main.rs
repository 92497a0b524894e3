use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use ctls::{exit, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(exit::SUCCESS),
                _ => ExitCode::from(exit::USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ctls: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
