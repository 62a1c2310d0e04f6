//! Command-line front end: `arslie <command> --config <file> [--out <dir>] [--svg]`.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{parse_rational, parse_real, ProblemConfig, Section};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Numeric(_) => EXIT_NUMERIC,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<crate::error::Error> for CliError {
    fn from(e: crate::error::Error) -> Self {
        match e {
            crate::error::Error::Validation(_) => CliError::Validation(e.to_string()),
            crate::error::Error::Numeric { .. } | crate::error::Error::Invariant(_) => CliError::Numeric(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "arslie",
    version,
    about = "Simple almost-Riemannian structures on Lie groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct CommonArgs {
    /// Problem file (INI).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Also write SVG plots.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report which structural results about the singular locus apply.
    Classify(CommonArgs),
    /// Integrate one normal geodesic.
    Geodesic(CommonArgs),
    /// Endpoints of unit-energy geodesics from a point.
    Front(CommonArgs),
    /// Abnormal curves through a singular point.
    Abnormal(CommonArgs),
    /// Integrate a geodesic of the desingularized structure and project it.
    Lift(CommonArgs),
    /// Run the built-in oracle suite.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

/// Runs a parsed command line, printing to stdout/stderr; returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let mut out = std::io::stdout();
    match commands::dispatch(&cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("arslie: {e}");
            e.exit_code()
        }
    }
}
