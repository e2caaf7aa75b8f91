//! Command-line front end: build designs into JSON files, verify design
//! files exhaustively, and check parameter admissibility.
//!
//! Exit codes: 0 when the check passes, 1 when the mathematics says no,
//! 2 for usage, parse and size errors.

pub mod commands;
pub mod format;

use clap::{Parser, Subcommand};

pub use commands::{construct, run_check, run_construct, run_verify, verify_file, Outcome};
pub use format::{DesignFile, Kind};

#[derive(Debug, Parser)]
#[command(name = "diffam", version, about = "Difference families, difference sets and their verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a design and write it as JSON.
    Construct {
        #[arg(value_enum)]
        construction: commands::Construction,
        #[command(flatten)]
        args: Box<commands::ConstructArgs>,
    },
    /// Verify a design file exhaustively.
    Verify(commands::VerifyArgs),
    /// Check parameter admissibility.
    Check {
        #[arg(value_enum)]
        kind: commands::CheckKind,
        #[arg(required = true)]
        numbers: Vec<u64>,
    },
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Construct { construction, args } => run_construct(*construction, args),
        Command::Verify(args) => run_verify(args),
        Command::Check { kind, numbers } => run_check(*kind, numbers),
    }
}
