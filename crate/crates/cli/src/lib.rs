//! Experiment runner around the `rips_morse` library: orbit enumeration of
//! lattice sets, seeded sampling, verification campaigns and flat reports.
//!
//! Exit statuses: 0 when every check passed (warnings allowed), 1 when a
//! property was violated (a witness file is written), 2 on usage or input
//! errors.

pub mod canonical;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;
pub mod sampling;

use std::process::ExitCode;

use serde_json::json;

pub use commands::{execute, Cli, Command, Outcome};
pub use error::CliError;

/// Executes a parsed command line, writing the report and any witness file.
pub fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let outcome = execute(&cli.command)?;
    let output = cli.command.output();
    let format = output.format.unwrap_or_else(|| cli.command.default_format());
    let rendered = outcome.report.render(format)?;
    match &output.out {
        Some(path) => report::write_file(path, &rendered)?,
        None => print!("{rendered}"),
    }
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    if !outcome.failed {
        return Ok(ExitCode::SUCCESS);
    }
    let witness = json!({
        "config": outcome.report.config,
        "violations": outcome.report.violations,
    });
    let path = report::witness_path(output.out.as_deref());
    let mut text = serde_json::to_string_pretty(&witness).expect("witnesses serialize");
    text.push('\n');
    report::write_file(&path, &text)?;
    eprintln!(
        "{} violation(s); witness written to {}",
        outcome.report.violations.len(),
        path.display()
    );
    Ok(ExitCode::from(1))
}
