//! `tutte`: command-line front end for tutte-core.
//!
//! Exit status: 0 on success, 1 on bad input, 2 when an internal invariant
//! fails (methods disagree, a motion function is not one cycle, ...).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tutte_core::corpus::DEFAULT_SEED;

/// Deletion/contraction memo size, in minors.
pub const MEMO_ENV: &str = "TUTTE_MEMO_CAPACITY";

#[derive(Parser, Debug)]
#[command(
    name = "tutte",
    version,
    about = "Tutte polynomials of graphs and combinatorial maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Seed for randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,

    /// Root half-edge, overriding the one in the input (by name).
    #[arg(long, global = true)]
    pub root: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Expansion,
    Delcon,
    Order,
    Embedding,
    Recursive,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tutte polynomial of a graph.
    Tutte {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// Edge order for `order`, as comma-separated edge ids (default: file order).
        #[arg(long)]
        order: Option<String>,
    },
    /// Motion cycle and induced orders of a spanning tree in a rooted map.
    Tour {
        #[arg(long)]
        map: PathBuf,
        /// Internal edges, comma-separated (e.g. `aa',bb',dd'`).
        #[arg(long)]
        tree: String,
    },
    /// Embedding activities of every spanning tree of a rooted map.
    Activities {
        #[arg(long)]
        map: PathBuf,
    },
    /// Delete or contract one edge of a map.
    Minor(MinorArgs),
    /// Euler characteristic and genus of a map.
    Euler {
        #[arg(long)]
        map: PathBuf,
    },
    /// All rooted maps with a given number of edges.
    Census(CensusArgs),
    /// Sum of the Tutte polynomials of all rooted maps with n edges.
    Zpoly(CensusArgs),
    /// Run every evaluator and invariant check on one graph.
    Check {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct MinorArgs {
    #[arg(long)]
    pub map: PathBuf,
    /// Edge to delete (not an isthmus).
    #[arg(
        long,
        conflicts_with = "contract",
        required_unless_present = "contract"
    )]
    pub delete: Option<String>,
    /// Edge to contract (not a loop).
    #[arg(long)]
    pub contract: Option<String>,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long)]
    pub edges: usize,
    #[arg(long)]
    pub genus: Option<u32>,
}

/// Failure of a subcommand, mapped to an exit status.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Invariant(String),
}

/// Subcommand output. `failed` marks a completed run whose checks found an
/// invariant violation; the body is still printed.
pub struct Report {
    pub body: String,
    pub failed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", report.body);
            if report.failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(2)
        }
    }
}
