use std::path::PathBuf;

use ck_tomo::QuantumState;
use clap::{Args, Parser, Subcommand};

use crate::checks::Suite;
use crate::config::{parse_state, parse_tolerance, Format, GridSpec};

#[derive(Debug, Parser)]
#[command(
    name = "ck-tomo",
    version,
    about = "Tomograms and Wigner functions of the damped quantum oscillator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tomogram over X, or over (phi, X) with --phi-grid.
    Tomogram(TomogramArgs),
    /// Wigner function over a (q, p) grid.
    Wigner(WignerArgs),
    /// First excited state in the optical frame, t=5, gamma=0.05.
    Figure1(OutputArgs),
    /// Run verification suites.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    /// fock:N or coherent:RE,IM
    #[arg(long, default_value = "fock:0", value_parser = parse_state)]
    pub state: QuantumState,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, default_value = "csv")]
    pub format: Format,
    /// Defaults to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TomogramArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "optical")]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "optical")]
    pub nu: Option<f64>,
    /// Use the rotated frame (cos phi, -sin phi).
    #[arg(long)]
    pub optical: bool,
    #[arg(
        long,
        allow_hyphen_values = true,
        requires = "optical",
        conflicts_with = "phi_grid"
    )]
    pub phi: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "optical")]
    pub phi_grid: Option<GridSpec>,
    #[arg(long, allow_hyphen_values = true, default_value = "-5:5:201")]
    pub x_grid: GridSpec,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WignerArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, allow_hyphen_values = true, default_value = "-4:4:81")]
    pub q_grid: GridSpec,
    #[arg(long, allow_hyphen_values = true, default_value = "-4:4:81")]
    pub p_grid: GridSpec,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Override a check tolerance, e.g. --tol evolution.residual=1e-4
    #[arg(long = "tol", value_parser = parse_tolerance)]
    pub tol: Vec<(String, f64)>,
    /// Write the report here as well as to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}
