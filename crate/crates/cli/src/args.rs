use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "pf", version, about = "Picard-Fuchs systems for Abelian integrals", allow_negative_numbers = true)]
pub struct Cli {
    /// Print failures as one JSON object on stderr.
    #[arg(long, global = true)]
    pub json_errors: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test regularity at infinity.
    Check {
        hamiltonian: String,
    },
    /// Monomial basis of the Milnor algebra.
    Basis {
        hamiltonian: String,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        format: Output,
    },
    /// Build, validate and print the system.
    System {
        hamiltonian: String,
        #[arg(long, value_enum, default_value_t = SystemFormat::Json)]
        format: SystemFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip validation (no oracle run).
        #[arg(long)]
        no_validate: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Decompose a 1-form `P,Q` (meaning P dx + Q dy) in the Petrov module.
    Reduce {
        hamiltonian: String,
        #[arg(long)]
        form: String,
    },
    /// Validate the system; with --numeric also check residuals on cycles.
    Verify {
        hamiltonian: String,
        #[arg(long)]
        numeric: bool,
        /// Levels for the numeric check (repeatable).
        #[arg(long = "t", allow_hyphen_values = true)]
        t: Vec<String>,
        /// Seed point `X,Y`, one per level or one for all (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        seed: Vec<String>,
        #[arg(long, default_value_t = 1e-6)]
        residual_tol: f64,
        #[command(flatten)]
        trace: TraceArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Periods and their derivatives on one cycle, with the system residual.
    Periods {
        hamiltonian: String,
        #[arg(long = "t", allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        seed: String,
        /// Write the traced cycle as JSON.
        #[arg(long)]
        cycle_out: Option<PathBuf>,
        #[command(flatten)]
        trace: TraceArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct TraceArgs {
    #[arg(long, value_enum, default_value_t = Mode::RealOval)]
    pub mode: Mode,
    /// Centre of the x loop (complex, e.g. `0`, `1+2i`).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub center: String,
    #[arg(long, default_value_t = 1)]
    pub turns: u32,
    #[arg(long, default_value_t = 1e-12)]
    pub newton_tol: f64,
    /// Largest arc-length step along real ovals.
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub closure_tol: f64,
    /// Refuse levels this close (relative) to a critical value.
    #[arg(long, default_value_t = 1e-6)]
    pub critical_tol: f64,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    /// Critical values closer than this are merged.
    #[arg(long, default_value_t = 1e-6)]
    pub cluster_radius: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    #[value(name = "real_oval", alias = "real-oval")]
    RealOval,
    #[value(name = "x_loop", alias = "x-loop")]
    XLoop,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemFormat {
    Json,
    Latex,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Text,
}
