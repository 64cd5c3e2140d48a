use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Named, strictly increasing, uniformly spaced sample axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    /// `count` points from `min` to `max`, both endpoints included.
    ///
    /// Points are formed as `(min (n-1-i) + max i) / (n-1)` so that a
    /// symmetric range is sampled exactly symmetrically, zero included.
    pub fn uniform(name: impl Into<String>, min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 || !(min < max) || !min.is_finite() || !max.is_finite() {
            return Err(Error::Domain(format!(
                "axis needs min < max and at least two points, got {min}:{max}:{count}"
            )));
        }
        let last = (count - 1) as f64;
        let values = (0..count)
            .map(|i| {
                let i = i as f64;
                (min * (last - i) + max * i) / last
            })
            .collect();
        Ok(Self {
            name: name.into(),
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let v = &self.values;
        if v.len() < 2 {
            return Err(Error::Domain(format!(
                "axis {} has fewer than two points",
                self.name
            )));
        }
        let step = (v[v.len() - 1] - v[0]) / (v.len() - 1) as f64;
        let scale = v[0].abs().max(v[v.len() - 1].abs()).max(step.abs());
        for (i, pair) in v.windows(2).enumerate() {
            if !(pair[1] > pair[0]) {
                return Err(Error::Domain(format!(
                    "axis {} not increasing at {i}",
                    self.name
                )));
            }
            if ((pair[1] - pair[0]) - step).abs() > 1e-12 * scale.max(1.0) {
                return Err(Error::Domain(format!(
                    "axis {} not uniform at {i}",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// Real samples over one or two axes. Values are row-major with `axis1`
/// outermost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarGrid {
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub values: Vec<f64>,
    pub meta: BTreeMap<String, String>,
}

impl ScalarGrid {
    pub fn new(axis1: Axis, axis2: Option<Axis>, values: Vec<f64>) -> Result<Self> {
        let grid = Self {
            axis1,
            axis2,
            values,
            meta: BTreeMap::new(),
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.meta.insert(key.into(), value.to_string());
        self
    }

    pub fn inner_len(&self) -> usize {
        self.axis2.as_ref().map_or(1, Axis::len)
    }

    pub fn validate(&self) -> Result<()> {
        self.axis1.validate()?;
        if let Some(axis2) = &self.axis2 {
            axis2.validate()?;
        }
        let expected = self.axis1.len() * self.inner_len();
        if self.values.len() != expected {
            return Err(Error::Domain(format!(
                "grid holds {} values, axes require {expected}",
                self.values.len()
            )));
        }
        Ok(())
    }

    /// Value at `(i, j)`; `j` must be zero for one-dimensional grids.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.inner_len() + j]
    }

    /// The `axis2` slice at fixed `axis1` index.
    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.inner_len();
        &self.values[i * n..(i + 1) * n]
    }
}
