//! CSV tables and the JSON run manifest.

use std::fs;
use std::path::{Path, PathBuf};

use hypercross_core::analysis::atlas::{AtlasEntry, Bounds, Rate};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{CommandKind, ExperimentConfig};
use crate::error::CliError;

pub const SCHEMA: &str = "hypercross/1";
pub const MANIFEST: &str = "manifest.json";

/// A CSV table held in memory until written.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let csv_err = |source| CliError::Csv {
            path: path.to_path_buf(),
            source,
        };
        let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
        w.write_record(&self.header).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row).map_err(csv_err)?;
        }
        w.flush().map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Shortest round-trip decimal; `inf`, `-inf` and `nan` for non-finite values.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v}")
    }
}

/// JSON number, or the string form of [`num`] when not finite.
pub fn json_num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(num(v))
    }
}

fn json_rate(r: Rate) -> Value {
    json!({ "alpha": json_num(r.alpha), "beta": json_num(r.beta) })
}

fn json_bounds(b: Bounds) -> Value {
    json!({ "lower": json_rate(b.lower), "upper": json_rate(b.upper) })
}

pub fn json_atlas(e: &AtlasEntry) -> Value {
    json!({
        "region": e.region,
        "status": e.status.as_str(),
        "rate": e.rate.map(json_rate),
        "bounds": e.bounds.map(json_bounds),
        "citation": e.citation,
    })
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub schema: &'static str,
    pub command: CommandKind,
    pub passed: bool,
    pub config: &'a ExperimentConfig,
    /// Output files relative to the output directory.
    pub files: Vec<String>,
    pub results: Value,
}

impl Manifest<'_> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest is always serializable");
        s.push('\n');
        s
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn create_dir(dir: &Path) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    Ok(dir.to_path_buf())
}
