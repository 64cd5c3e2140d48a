//! Command-line front end for `ck-tomo`: grid emission for tomograms and
//! Wigner functions, the rotation-angle figure, and seeded check suites.

pub mod args;
pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod pool;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use crate::args::{Cli, Command, OutputArgs, StateArgs};
use crate::checks::run_suite;
use crate::config::{FrameMode, PhiSelection, RunConfig};
use crate::error::{usage, CliResult};

pub use checks::{CheckOutcome, Report, Suite};
pub use commands::{cmd_figure1, cmd_tomogram, cmd_wigner};
pub use config::{Format, GridSpec};
pub use error::CliError;

fn base_config(state: &StateArgs, out: &OutputArgs) -> RunConfig {
    let mut cfg = commands::figure1_config();
    cfg.gamma = state.gamma;
    cfg.t = state.t;
    cfg.state = state.state;
    cfg.format = out.format;
    cfg.output = out.output.clone();
    cfg
}

fn execute(cli: Cli) -> CliResult<i32> {
    let pool = pool::build_pool(pool::threads_from_env()?)?;
    match cli.command {
        Command::Tomogram(a) => {
            let mut cfg = base_config(&a.state, &a.out);
            cfg.x_grid = a.x_grid;
            cfg.frame = if a.optical {
                match (a.phi, a.phi_grid) {
                    (_, Some(grid)) => FrameMode::Optical {
                        phi: PhiSelection::Grid(grid),
                    },
                    (phi, None) => FrameMode::Optical {
                        phi: PhiSelection::Fixed(phi.unwrap_or(0.0)),
                    },
                }
            } else {
                FrameMode::Symplectic {
                    mu: a.mu.unwrap_or(1.0),
                    nu: a.nu.unwrap_or(0.0),
                }
            };
            let grid = pool.install(|| cmd_tomogram(&cfg))?;
            output::emit(&grid, cfg.format, cfg.output.as_deref())?;
            Ok(0)
        }
        Command::Wigner(a) => {
            let mut cfg = base_config(&a.state, &a.out);
            cfg.q_grid = a.q_grid;
            cfg.p_grid = a.p_grid;
            let grid = pool.install(|| cmd_wigner(&cfg))?;
            output::emit(&grid, cfg.format, cfg.output.as_deref())?;
            Ok(0)
        }
        Command::Figure1(out) => {
            let grid = pool.install(cmd_figure1)?;
            output::emit(&grid, out.format, out.output.as_deref())?;
            Ok(0)
        }
        Command::Check(a) => {
            let overrides: BTreeMap<String, f64> = a.tol.into_iter().collect();
            let report = pool.install(|| run_suite(a.suite, a.seed, &overrides))?;
            let text = report.render();
            if let Some(path) = &a.output {
                std::fs::write(path, &text)
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ck-tomo: {e}");
            e.exit_code()
        }
    }
}
