use std::process::ExitCode;

use clap::Parser;
use hypercoarsen_cli::{configure_threads, error_line, run, Cli, RunConfig, THREADS_ENV};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or_default().to_string();
            eprintln!("error\tusage\t{}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let result = configure_threads(std::env::var(THREADS_ENV).ok().as_deref()).and_then(|()| run(&RunConfig::from(cli)));
    match result {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning\t{w}");
            }
            print!("{}", outcome.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", error_line(&e));
            ExitCode::FAILURE
        }
    }
}
