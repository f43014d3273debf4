//! `pf`: build and verify Picard-Fuchs systems from the command line.

mod args;
mod commands;
mod complex;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("PF_NUM_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let json_errors = cli.json_errors;
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            report(&failure, json_errors);
            ExitCode::from(failure.code())
        }
    }
}

fn report(failure: &Failure, json: bool) {
    if json {
        let v = serde_json::json!({
            "error": failure.kind(),
            "message": failure.to_string(),
            "exit_code": failure.code(),
        });
        eprintln!("{v}");
    } else {
        eprintln!("pf: {failure}");
    }
}
