//! Command-line front end: run experiments from config files, verify
//! invariance and commutant claims, compute twirls, and persist training
//! trajectories as CSV/JSON for plotting.

pub mod commands;
pub mod config;
pub mod output;

use clap::{Parser, Subcommand};

/// Exit code for configuration errors.
pub const EXIT_CONFIG: i32 = 2;
/// Exit code for numerical failures (non-finite loss).
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Parser)]
#[command(name = "symvqc", about = "Symmetric variational quantum circuits: train and check equivariant embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a training experiment from a config file and write loss.csv,
    /// params.csv and summary.json.
    Run { config: std::path::PathBuf },
    /// Recompute the invariance report for saved parameters
    /// (params.csv or summary.json).
    Check {
        experiment: String,
        params_file: std::path::PathBuf,
    },
    /// Print the twirl of a Pauli string over a group, with its commutant
    /// certificate.
    Twirl { group: String, pauli: String },
    /// List the built-in experiments.
    List,
}

/// Parses arguments and dispatches; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { config } => commands::cmd_run(&config),
        Command::Check {
            experiment,
            params_file,
        } => commands::cmd_check(&experiment, &params_file),
        Command::Twirl { group, pauli } => commands::cmd_twirl(&group, &pauli),
        Command::List => commands::cmd_list(),
    };
    match outcome {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

/// CLI-level error carrying the exit code contract: 2 for config problems,
/// 3 for numerical failures.
#[derive(Debug)]
pub struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: EXIT_CONFIG,
        }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: EXIT_NUMERIC,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.code
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<symvqc_core::Error> for CliError {
    fn from(err: symvqc_core::Error) -> Self {
        match err {
            symvqc_core::Error::NonFiniteLoss { .. } => Self::numeric(err.to_string()),
            other => Self::config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self::config(err.to_string())
    }
}
