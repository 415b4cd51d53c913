use std::process::ExitCode;

use clap::Parser;
use rips_morse_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(&cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    })
}
