//! `corrprop`: evidence reports and plot data for the equality of two
//! correlated proportions.
//!
//! Exit status is 0 on success, 1 when the computation rejects its input
//! (invalid table, hyperparameter, grid) and 2 on usage errors. Failures are
//! reported on stderr as a single JSON object.

mod commands;
mod input;
mod output;

use std::io;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "corrprop", version, about = "Bayes factors for two correlated proportions")]
#[command(after_help = "Set CORRPROP_THREADS to fix the number of worker threads.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bayes factors, posterior probabilities and McNemar's test for one table
    Test(commands::TestArgs),
    /// Pr(H0 | n) against the prior-to-sample size ratio q
    Sensitivity(commands::SensitivityArgs),
    /// CI prior curves or the I prior surface with its marginals
    PriorDensity(commands::PriorDensityArgs),
    /// CI and I posterior probabilities for fixed swings as n++ grows
    NppCurve(commands::NppArgs),
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invalid(String),
    Compute(corrprop::Error),
    Io(io::Error),
}

impl From<corrprop::Error> for CliError {
    fn from(e: corrprop::Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Invalid(_) => "invalid_input",
            CliError::Compute(e) => match e {
                corrprop::Error::Domain(_) => "domain",
                corrprop::Error::InvalidTable(_) => "invalid_table",
                corrprop::Error::InvalidHyper(_) => "invalid_hyper",
                corrprop::Error::InvalidGrid(_) => "invalid_grid",
                corrprop::Error::InvalidImaginary(_) => "invalid_imaginary",
                corrprop::Error::Unsupported(_) => "unsupported",
                corrprop::Error::EmptyInput(_) => "empty_input",
            },
            CliError::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Invalid(m) => m.clone(),
            CliError::Compute(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn fail(err: CliError) -> ExitCode {
    eprintln!("{}", json!({ "error": err.kind(), "message": err.message(), "exit_code": err.exit_code() }));
    ExitCode::from(err.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => return fail(CliError::Usage(e.to_string().trim_end().to_string())),
    };
    if let Err(e) = input::configure_threads() {
        return fail(e);
    }
    let result = match &cli.command {
        Command::Test(a) => commands::test(a),
        Command::Sensitivity(a) => commands::sensitivity(a),
        Command::PriorDensity(a) => commands::prior_density(a),
        Command::NppCurve(a) => commands::npp_curve(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}
