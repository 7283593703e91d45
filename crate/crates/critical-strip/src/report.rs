//! Check reports and their JSON and CSV forms.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{io_err, HarnessError, Result};

/// A computed number with the route that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    pub value: f64,
    pub route: String,
}

impl Measured {
    pub fn new(value: f64, route: impl Into<String>) -> Self {
        Self { value: finite(value), route: route.into() }
    }
}

/// JSON has no infinities; they are stored as ±f64::MAX.
pub fn finite(x: f64) -> f64 {
    if x.is_nan() {
        f64::MAX
    } else {
        x.clamp(f64::MIN, f64::MAX)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub values: BTreeMap<String, Measured>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: f64,
}

impl CheckReport {
    pub fn new(
        id: impl Into<String>,
        params: BTreeMap<String, serde_json::Value>,
        values: BTreeMap<String, Measured>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        let residual = finite(residual);
        Self { id: id.into(), params, values, residual, tolerance, pass: residual < tolerance, runtime_ms: 0.0 }
    }

    /// The report with its runtime zeroed, for determinism comparisons.
    pub fn without_runtime(&self) -> Self {
        Self { runtime_ms: 0.0, ..self.clone() }
    }
}

pub fn to_json(reports: &[CheckReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)?)
}

pub fn from_json(text: &str) -> Result<Vec<CheckReport>> {
    Ok(serde_json::from_str(text)?)
}

const CSV_HEADER: [&str; 7] = ["id", "params", "values", "residual", "tolerance", "pass", "runtime_ms"];

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per report; `params` and `values` are embedded JSON and the
/// floats carry 17 significant digits.
pub fn to_csv(reports: &[CheckReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record([
            r.id.clone(),
            serde_json::to_string(&r.params)?,
            serde_json::to_string(&r.values)?,
            sci(r.residual),
            sci(r.tolerance),
            r.pass.to_string(),
            sci(r.runtime_ms),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn from_csv(text: &str) -> Result<Vec<CheckReport>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(HarnessError::Config(format!("unexpected csv header {header:?}")));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|e| HarnessError::Config(format!("{s}: {e}")));
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        out.push(CheckReport {
            id: rec[0].to_string(),
            params: serde_json::from_str(&rec[1])?,
            values: serde_json::from_str(&rec[2])?,
            residual: num(&rec[3])?,
            tolerance: num(&rec[4])?,
            pass: rec[5].parse().map_err(|_| HarnessError::Config(format!("bad flag {}", &rec[5])))?,
            runtime_ms: num(&rec[6])?,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn write_reports(reports: &[CheckReport], path: &Path, format: Format) -> Result<()> {
    let text = match format {
        Format::Json => to_json(reports)?,
        Format::Csv => to_csv(reports)?,
    };
    crate::io::write_text(path, &text)
}

pub fn read_reports(path: &Path) -> Result<Vec<CheckReport>> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let parsed = if path.extension().is_some_and(|e| e == "csv") { from_csv(&text) } else { from_json(&text) };
    parsed.map_err(|e| HarnessError::Format { path: path.into(), message: e.to_string() })
}
