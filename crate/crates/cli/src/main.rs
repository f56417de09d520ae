mod args;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::RunConfig;

/// Exit codes: 0 success, 1 verification failure, 2 input error, 3 cap error.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Cap(String),
}

impl From<atkinson_core::Error> for CliError {
    fn from(e: atkinson_core::Error) -> Self {
        match e {
            atkinson_core::Error::GradeCap { .. } | atkinson_core::Error::NodeCap { .. } => {
                CliError::Cap(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result =
        RunConfig::new(&cli.global, &cli.command).and_then(|cfg| commands::run(&cli.command, &cfg));
    match result {
        Ok((out, passed)) => {
            // A closed pipe downstream is not an error of this run.
            let _ = writeln!(io::stdout(), "{}", out);
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("{}: verification failed", cli.command.name());
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(CliError::Cap(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(3)
        }
    }
}
