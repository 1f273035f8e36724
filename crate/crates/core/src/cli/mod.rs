//! Command-line front end: argument parsing, the four commands and their
//! artifacts.
//!
//! Exit codes: 0 when every check passed, 1 when the checks ran and some
//! property failed, 2 on configuration or I/O errors.

mod commands;
pub mod config;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{cmd_axioms, cmd_hypotheses, cmd_solve, cmd_suite};
pub use config::RunConfig;
pub use output::{write_trace_csv, TRACE_COLUMNS};

#[derive(Debug, Parser)]
#[command(name = "fuzzyfix", version, about = "Fuzzy metric axioms, contraction hypotheses and fixed-point iteration")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check t-norm and fuzzy metric axioms on samples.
    Axioms(CommonArgs),
    /// Estimate the contraction constants on a sample.
    Hypotheses(CommonArgs),
    /// Iterate to the fixed points and verify them.
    Solve(CommonArgs),
    /// Run the seeded property suite.
    Suite(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Both,
}

impl Format {
    pub fn json(self) -> bool {
        self != Format::Csv
    }

    pub fn csv(self) -> bool {
        self != Format::Json
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides the seed of the configuration.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Both)]
    pub format: Format,
    /// Keep pairs of coinciding points in the hypothesis scan.
    #[arg(long)]
    pub include_diagonal: bool,
    /// Replaces the largest grid value.
    #[arg(long)]
    pub t_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Passed
        } else {
            Outcome::Failed
        }
    }

    pub fn code(self) -> i32 {
        match self {
            Outcome::Passed => 0,
            Outcome::Failed => 1,
        }
    }
}

pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Axioms(a) => cmd_axioms(a),
        Command::Hypotheses(a) => cmd_hypotheses(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Suite(a) => cmd_suite(a),
    };
    match result {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                2
            } else {
                0
            }
        }
    }
}
