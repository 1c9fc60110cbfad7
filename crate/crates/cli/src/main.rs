use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sdias_cli::{execute, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = execute(&cli);
    eprint!("{}", run.diagnostics);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &run.output)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(run.output.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    match written {
        Ok(()) => ExitCode::from(run.status.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::Error.exit_code())
        }
    }
}
