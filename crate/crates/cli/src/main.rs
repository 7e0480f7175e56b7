mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Format};
use commands::{execute, Failure};

fn first_line(text: &str) -> &str {
    text.lines().find(|l| !l.trim().is_empty()).unwrap_or(text).trim()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", first_line(&e.to_string()));
            return ExitCode::from(2);
        }
    };

    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", first_line(&msg));
            return ExitCode::from(2);
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {}", first_line(&msg));
            return ExitCode::from(1);
        }
    };

    if let Some(table) = &outcome.table {
        eprint!("{table}");
    }
    let text = match cli.format {
        Format::Json => output::to_json(&outcome.envelope) + "\n",
        Format::Csv => output::to_csv(&outcome.envelope),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
