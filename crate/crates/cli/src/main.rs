//! `sgpv`: batch second-generation p-values from the command line.
//!
//! Exit codes: 0 success, 2 input error, 3 configuration error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{DesignArgs, ReliabilityArgs, ScreenArgs, SimulateArgs};
use crate::config::{CommonArgs, FileConfig, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "sgpv", version, about = "Second-generation p-values for interval estimates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// p_delta for each row of `id,lo,hi` or `id,estimate,se`.
    Compute {
        /// Input CSV; `-` or absent reads stdin.
        input: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Outcome probabilities over a grid of true effects.
    Design {
        #[arg(long)]
        n: Option<f64>,
        /// Variance of sqrt(n)(estimate - theta).
        #[arg(long)]
        variance: Option<f64>,
        /// Grid of true effects: `start:stop:step`, `a,b,c`, or a single value.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// False discovery and confirmation rates over a grid of alternatives.
    Reliability {
        #[arg(long)]
        n: Option<f64>,
        #[arg(long)]
        variance: Option<f64>,
        /// Prior odds P(H1)/P(H0).
        #[arg(long, allow_negative_numbers = true)]
        odds: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Screen many estimates against one null, with classical comparators.
    Screen {
        input: Option<PathBuf>,
        /// Welch intervals for two-group rows instead of pooled variance.
        #[arg(long)]
        welch: bool,
        /// Print the p_delta by Bonferroni cross-tabulation (requires p-values).
        #[arg(long)]
        crosstab: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// p_delta along a series of intervals indexed by `t`.
    Track {
        input: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Seeded Monte Carlo check of the outcome probabilities.
    Simulate {
        #[arg(long)]
        n: Option<f64>,
        #[arg(long)]
        variance: Option<f64>,
        /// True effect; defaults to the null center.
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long)]
        replicates: Option<u64>,
        #[arg(long, allow_negative_numbers = true)]
        odds: Option<f64>,
        /// Also simulate FDR/FCR with this alternative.
        #[arg(long, allow_negative_numbers = true)]
        theta1: Option<f64>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Compute { common, .. }
            | Command::Design { common, .. }
            | Command::Reliability { common, .. }
            | Command::Screen { common, .. }
            | Command::Track { common, .. }
            | Command::Simulate { common, .. } => common,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = cli.command.common();
    let file = FileConfig::load(common.config.as_deref())?;
    let cfg = RunConfig::resolve(common, &file)?;
    match cli.command {
        Command::Compute { input, .. } => commands::compute(input.as_deref(), &cfg),
        Command::Design { n, variance, grid, .. } => commands::design(&DesignArgs { n, variance, grid }, &file, &cfg),
        Command::Reliability { n, variance, odds, grid, .. } => {
            commands::reliability(&ReliabilityArgs { n, variance, odds, grid }, &file, &cfg)
        }
        Command::Screen { input, welch, crosstab, .. } => {
            let args = ScreenArgs {
                welch: welch || file.welch.unwrap_or(false),
                crosstab: crosstab || file.crosstab.unwrap_or(false),
            };
            commands::screen(input.as_deref(), &args, &cfg)
        }
        Command::Track { input, .. } => commands::track(input.as_deref(), &cfg),
        Command::Simulate { n, variance, theta, replicates, odds, theta1, .. } => {
            commands::simulate(&SimulateArgs { n, variance, theta, replicates, odds, theta1 }, &file, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
