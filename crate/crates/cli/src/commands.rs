use std::f64::consts::PI;

use ck_tomo::{Axis, QuantumState, ScalarGrid, Tomogram, TomographyFrame, Wigner};
use rayon::prelude::*;

use crate::config::{FrameMode, GridSpec, PhiSelection, RunConfig};
use crate::error::{usage, CliResult};

pub const MAX_WIGNER_AXIS: usize = 401;

pub const FIGURE1_GAMMA: f64 = 0.05;
pub const FIGURE1_T: f64 = 5.0;
pub const FIGURE1_PHI: GridSpec = GridSpec {
    min: 0.0,
    max: 2.0 * PI,
    count: 64,
};
pub const FIGURE1_X: GridSpec = GridSpec {
    min: -6.0,
    max: 6.0,
    count: 241,
};

fn equation(state: QuantumState) -> &'static str {
    match state {
        QuantumState::Fock { n: 0 } => "ground-tomogram",
        QuantumState::Fock { .. } => "fock-tomogram",
        QuantumState::Coherent { .. } => "coherent-tomogram",
    }
}

fn range(g: &GridSpec) -> String {
    format!("{}:{}:{}", g.min, g.max, g.count)
}

/// Rows evaluated in parallel, assembled in index order.
fn rows<F>(outer: &[f64], inner: &[f64], f: F) -> CliResult<Vec<f64>>
where
    F: Fn(f64, f64) -> ck_tomo::Result<f64> + Sync,
{
    let rows: Vec<ck_tomo::Result<Vec<f64>>> = outer
        .par_iter()
        .map(|&a| inner.iter().map(|&b| f(a, b)).collect())
        .collect();
    let mut values = Vec::with_capacity(outer.len() * inner.len());
    for r in rows {
        values.extend(r?);
    }
    Ok(values)
}

/// Tomogram over `X` for one frame, or over `(phi, X)` for an angle grid.
pub fn cmd_tomogram(cfg: &RunConfig) -> CliResult<ScalarGrid> {
    cfg.validate()?;
    let params = cfg.params()?;
    let tomo = Tomogram::new(cfg.state, cfg.t, &params)?;
    let x_axis = cfg.x_grid.axis("X")?;
    let base = |grid: ScalarGrid| {
        grid.with_meta("gamma", cfg.gamma)
            .with_meta("t", cfg.t)
            .with_meta("state", cfg.state)
            .with_meta("equation", equation(cfg.state))
            .with_meta("x_range", range(&cfg.x_grid))
    };
    match cfg.frame {
        FrameMode::Symplectic { mu, nu } => {
            let values = rows(&[0.0], &x_axis.values, |_, x| {
                tomo.eval(&TomographyFrame { x, mu, nu })
            })?;
            let grid = ScalarGrid::new(x_axis, None, values)?;
            Ok(base(grid).with_meta("frame", format!("symplectic mu={mu} nu={nu}")))
        }
        FrameMode::Optical {
            phi: PhiSelection::Fixed(phi),
        } => {
            let values = rows(&[phi], &x_axis.values, |phi, x| {
                tomo.eval(&TomographyFrame::optical(x, phi))
            })?;
            let grid = ScalarGrid::new(x_axis, None, values)?;
            Ok(base(grid).with_meta("frame", format!("optical phi={phi}")))
        }
        FrameMode::Optical {
            phi: PhiSelection::Grid(spec),
        } => {
            let phi_axis = spec.axis("phi")?;
            let values = rows(&phi_axis.values, &x_axis.values, |phi, x| {
                tomo.eval(&TomographyFrame::optical(x, phi))
            })?;
            let grid = ScalarGrid::new(phi_axis, Some(x_axis), values)?;
            Ok(base(grid)
                .with_meta("frame", "optical")
                .with_meta("phi_range", range(&spec)))
        }
    }
}

pub fn cmd_wigner(cfg: &RunConfig) -> CliResult<ScalarGrid> {
    cfg.validate()?;
    if cfg.q_grid.count > MAX_WIGNER_AXIS || cfg.p_grid.count > MAX_WIGNER_AXIS {
        return Err(usage(format!(
            "Wigner grids are limited to {MAX_WIGNER_AXIS} points per axis"
        )));
    }
    let params = cfg.params()?;
    let w = Wigner::new(cfg.state, cfg.t, &params);
    let q = cfg.q_grid.axis("q")?;
    let p = cfg.p_grid.axis("p")?;
    let values = rows(&q.values, &p.values, |q, p| w.eval(q, p))?;
    Ok(ScalarGrid::new(q, Some(p), values)?
        .with_meta("gamma", cfg.gamma)
        .with_meta("t", cfg.t)
        .with_meta("state", cfg.state)
        .with_meta("equation", "wigner")
        .with_meta("q_range", range(&cfg.q_grid))
        .with_meta("p_range", range(&cfg.p_grid)))
}

/// First excited state in the optical frame against the rotation angle.
/// The axis ranges are not given with the original figure; the ones used
/// here are recorded in the metadata.
pub fn cmd_figure1() -> CliResult<ScalarGrid> {
    let cfg = figure1_config();
    let grid = cmd_tomogram(&cfg)?;
    Ok(grid.with_meta("figure", "first excited state vs rotation angle"))
}

pub fn figure1_config() -> RunConfig {
    RunConfig {
        gamma: FIGURE1_GAMMA,
        t: FIGURE1_T,
        state: QuantumState::Fock { n: 1 },
        frame: FrameMode::Optical {
            phi: PhiSelection::Grid(FIGURE1_PHI),
        },
        x_grid: FIGURE1_X,
        q_grid: GridSpec {
            min: -4.0,
            max: 4.0,
            count: 81,
        },
        p_grid: GridSpec {
            min: -4.0,
            max: 4.0,
            count: 81,
        },
        format: Default::default(),
        output: None,
        tolerances: Default::default(),
    }
}

/// Trapezoid integral of each row over the inner axis.
pub fn row_integrals(grid: &ScalarGrid) -> Vec<f64> {
    let inner: &Axis = grid.axis2.as_ref().unwrap_or(&grid.axis1);
    let rows = if grid.axis2.is_some() {
        grid.axis1.len()
    } else {
        1
    };
    (0..rows)
        .map(|i| {
            let row = if grid.axis2.is_some() {
                grid.row(i)
            } else {
                &grid.values[..]
            };
            inner
                .values
                .windows(2)
                .zip(row.windows(2))
                .map(|(x, v)| 0.5 * (x[1] - x[0]) * (v[0] + v[1]))
                .sum()
        })
        .collect()
}
