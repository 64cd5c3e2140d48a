//! Grid serialization. CSV files start with `# key=value` metadata lines,
//! then a header row naming the axes, then one row per sample. Numbers are
//! written with 17 significant digits so every double reads back exactly.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use ck_tomo::{Axis, ScalarGrid};

use crate::config::Format;
use crate::error::{usage, CliResult};

fn number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_csv(grid: &ScalarGrid) -> CliResult<String> {
    let mut out = String::new();
    for (k, v) in &grid.meta {
        out.push_str(&format!("# {k}={v}\n"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| usage(format!("csv: {e}"));
    match &grid.axis2 {
        None => {
            w.write_record([grid.axis1.name.as_str(), "value"])
                .map_err(csv_err)?;
            for (x, v) in grid.axis1.values.iter().zip(&grid.values) {
                w.write_record([number(*x), number(*v)]).map_err(csv_err)?;
            }
        }
        Some(axis2) => {
            w.write_record([grid.axis1.name.as_str(), axis2.name.as_str(), "value"])
                .map_err(csv_err)?;
            for (i, a) in grid.axis1.values.iter().enumerate() {
                for (b, v) in axis2.values.iter().zip(grid.row(i)) {
                    w.write_record([number(*a), number(*b), number(*v)])
                        .map_err(csv_err)?;
                }
            }
        }
    }
    let body = w.into_inner().map_err(|e| usage(format!("csv: {e}")))?;
    out.push_str(&String::from_utf8(body).expect("csv output is ascii"));
    Ok(out)
}

/// Inverse of [`to_csv`].
pub fn from_csv(text: &str) -> CliResult<ScalarGrid> {
    let mut meta = BTreeMap::new();
    let mut body_start = 0;
    for line in text.lines() {
        let Some(entry) = line.strip_prefix('#') else {
            break;
        };
        let (k, v) = entry
            .trim_start()
            .split_once('=')
            .ok_or_else(|| usage(format!("malformed metadata line {line:?}")))?;
        meta.insert(k.to_string(), v.to_string());
        body_start += line.len() + 1;
    }
    let mut reader = csv::Reader::from_reader(&text.as_bytes()[body_start..]);
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| usage(format!("csv: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    let two_d = match header.len() {
        2 => false,
        3 => true,
        n => return Err(usage(format!("expected 2 or 3 columns, found {n}"))),
    };
    let mut a1 = Vec::new();
    let mut a2 = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| usage(format!("csv: {e}")))?;
        let nums = record
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| usage(format!("bad number {f:?}")))
            })
            .collect::<CliResult<Vec<f64>>>()?;
        if a1.last() != Some(&nums[0]) {
            a1.push(nums[0]);
        }
        if two_d {
            if a1.len() == 1 {
                a2.push(nums[1]);
            }
            values.push(nums[2]);
        } else {
            values.push(nums[1]);
        }
    }
    let axis1 = Axis {
        name: header[0].clone(),
        values: a1,
    };
    let axis2 = two_d.then(|| Axis {
        name: header[1].clone(),
        values: a2,
    });
    let mut grid = ScalarGrid::new(axis1, axis2, values)?;
    grid.meta = meta;
    Ok(grid)
}

pub fn to_json(grid: &ScalarGrid) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(grid).map_err(|e| usage(format!("json: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn render(grid: &ScalarGrid, format: Format) -> CliResult<String> {
    match format {
        Format::Csv => to_csv(grid),
        Format::Json => to_json(grid),
    }
}

/// Writes to `path`, or stdout when absent.
pub fn emit(grid: &ScalarGrid, format: Format, path: Option<&Path>) -> CliResult<()> {
    let text = render(grid, format)?;
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
