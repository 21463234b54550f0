mod args;
mod commands;
mod config;
mod error;
mod output;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Format};
use error::CliError;

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn real_main() -> Result<(), CliError> {
    let argv = config::expand(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return Ok(());
        }
        Err(e) => {
            let text = e.render().to_string();
            let text = text.trim_end().strip_prefix("error: ").unwrap_or(text.trim_end());
            return Err(CliError::Usage(text.to_string()));
        }
    };
    let outcome = commands::run(&cli.command)?;
    let text = match cli.format {
        Format::Csv => outcome.table.to_csv(),
        Format::Json => outcome.table.to_json(outcome.command, outcome.params, outcome.summary),
    };
    match &cli.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            for m in &outcome.messages {
                println!("{m}");
            }
        }
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
            for m in &outcome.messages {
                eprintln!("{m}");
            }
        }
    }
    Ok(())
}
