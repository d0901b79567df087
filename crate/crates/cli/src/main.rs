//! `dlie`: JSON verification reports for the so(p,q)/iso(p,q) bialgebra
//! pipelines and the SO₀(1,n) decompositions.
//!
//! Exit codes: 0 all checks pass, 1 some check fails, 2 usage error,
//! 3 obstruction (element outside the product set or on its boundary),
//! 4 input matrix not in SO₀(1,n).

mod decompose;
mod params;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dlie::{Error, Report};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "dlie", version, about = "Verify Lie bialgebra structures and decompose SO0(1,n) elements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its report.
    Verify(verify::VerifyArgs),
    /// Decompose a matrix of SO0(1,n) and print the factors.
    Decompose(decompose::DecomposeArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    So,
    Iso,
    Gcybe,
    Double,
    Manin,
    Roundtrip,
}

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_OBSTRUCTED: u8 = 3;
pub const EXIT_NOT_IN_GROUP: u8 = 4;

#[derive(Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    pub exit_code: u8,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, checks: Report, result: Option<serde_json::Value>) -> Self {
        let exit_code = if checks.passed() { 0 } else { EXIT_FAIL };
        VerificationReport { suite: suite.into(), checks, result, exit_code }
    }
}

/// Exit code for an error raised while running a suite.
pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NotInGroup(_) => EXIT_NOT_IN_GROUP,
        Error::Obstructed { .. } | Error::OnBoundary { .. } => EXIT_OBSTRUCTED,
        Error::NoSolution
        | Error::NotProportional { .. }
        | Error::NotClosed { .. }
        | Error::DegeneratePairing
        | Error::BasisMismatch(_)
        | Error::NumericalBreakdown(_)
        | Error::NotBType
        | Error::ZeroTrivector => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => verify::run(&args),
        Command::Decompose(args) => decompose::run(&args),
    };
    match outcome {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            ExitCode::from(report.exit_code)
        }
        Err(err) => {
            eprintln!("dlie: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
