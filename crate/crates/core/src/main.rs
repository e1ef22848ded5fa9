use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use entcat::cli::{run, Cli, EXIT_INPUT};
use entcat::limits::{set_component_cap, COMPONENT_CAP_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(raw) = std::env::var(COMPONENT_CAP_ENV) {
        match raw.trim().parse::<u64>() {
            Ok(cap) => set_component_cap(cap),
            Err(_) => {
                eprintln!("error: {COMPONENT_CAP_ENV} must be a positive integer, got `{raw}`");
                return ExitCode::from(EXIT_INPUT);
            }
        }
    }
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut input, &mut out) {
        Ok(verdict) => verdict.exit_code(),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
