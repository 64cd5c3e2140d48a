use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use ck_tomo::{make_params, Axis, DampingParams, QuantumState};

use crate::error::{usage, CliResult};

pub const MIN_GRID_COUNT: usize = 2;
pub const MAX_GRID_COUNT: usize = 100_000;

/// `a:b:n`, both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn axis(&self, name: &str) -> CliResult<Axis> {
        Ok(Axis::uniform(name, self.min, self.max, self.count)?)
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("grid {s:?} is not of the form a:b:n"));
        };
        let min: f64 = a
            .trim()
            .parse()
            .map_err(|_| format!("bad grid start {a:?}"))?;
        let max: f64 = b
            .trim()
            .parse()
            .map_err(|_| format!("bad grid end {b:?}"))?;
        let count: usize = n
            .trim()
            .parse()
            .map_err(|_| format!("bad grid count {n:?}"))?;
        if !(MIN_GRID_COUNT..=MAX_GRID_COUNT).contains(&count) {
            return Err(format!(
                "grid count {count} outside [{MIN_GRID_COUNT}, {MAX_GRID_COUNT}]"
            ));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(format!("grid {s:?} needs finite a < b"));
        }
        Ok(Self { min, max, count })
    }
}

/// `name=value` tolerance override.
pub fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("tolerance {s:?} is not name=value"))?;
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("bad tolerance value {value:?}"))?;
    if !(v.is_finite() && v >= 0.0) {
        return Err(format!("tolerance {name} must be finite and nonnegative"));
    }
    Ok((name.trim().to_string(), v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?}, expected csv or json")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FrameMode {
    Symplectic {
        mu: f64,
        nu: f64,
    },
    /// A single angle or an angle grid.
    Optical {
        phi: PhiSelection,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhiSelection {
    Fixed(f64),
    Grid(GridSpec),
}

/// Everything a grid command needs, validated.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub gamma: f64,
    pub t: f64,
    pub state: QuantumState,
    pub frame: FrameMode,
    pub x_grid: GridSpec,
    pub q_grid: GridSpec,
    pub p_grid: GridSpec,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub tolerances: BTreeMap<String, f64>,
}

impl RunConfig {
    pub fn params(&self) -> CliResult<DampingParams> {
        make_params(self.gamma).map_err(|e| usage(e.to_string()))
    }

    pub fn validate(&self) -> CliResult<()> {
        self.params()?;
        if !(self.t >= 0.0 && self.t.is_finite()) {
            return Err(usage(format!(
                "time must be finite and >= 0, got {}",
                self.t
            )));
        }
        Ok(())
    }
}

pub fn parse_state(s: &str) -> Result<QuantumState, String> {
    s.parse::<QuantumState>().map_err(|e| e.to_string())
}
