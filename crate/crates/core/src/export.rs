//! Deterministic CSV, JSON and PGM serialization.
//!
//! Floats in CSV use 17 significant digits in scientific notation. JSON goes
//! through `serde_json`, whose float output is the shortest string that
//! round-trips, and struct fields keep declaration order. Identical inputs
//! therefore give byte-identical files.

use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// One CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// Header line plus one line per row, `\n`-terminated.
pub fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<Cell>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(Cell::render).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    out
}

pub fn json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Binary 8-bit PGM (`P5`), rows written top to bottom. Values are scaled
/// linearly so that the maximum maps to 255; negative values clamp to 0.
pub fn pgm_bytes(width: usize, height: usize, values: &[f64]) -> Result<Vec<u8>> {
    if values.len() != width * height || width == 0 || height == 0 {
        return Err(Error::validation(format!(
            "PGM needs {width}×{height} = {} values, got {}",
            width * height,
            values.len()
        )));
    }
    let max = values.iter().copied().fold(0.0f64, f64::max);
    let scale = if max > 0.0 { 255.0 / max } else { 0.0 };
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend(values.iter().map(|v| (v.max(0.0) * scale).round().clamp(0.0, 255.0) as u8));
    Ok(out)
}

/// Provenance record written next to every artifact.
#[derive(Debug, Clone, Serialize)]
pub struct Sidecar<'a, C: Serialize> {
    pub file: &'a str,
    pub producer: &'a str,
    pub producer_version: &'a str,
    pub library_version: &'a str,
    /// Library module that computed the artifact.
    pub module: &'a str,
    pub config: &'a C,
    /// Artifact-specific metadata (grid geometry, formula tags, reports).
    pub details: serde_json::Value,
}

/// Name of the sidecar belonging to `file`.
pub fn sidecar_name(file: &str) -> String {
    format!("{file}.meta.json")
}

/// Writes `contents` to `dir/file` and its sidecar to `dir/file.meta.json`.
pub fn write_artifact<C: Serialize>(dir: &Path, file: &str, contents: &[u8], sidecar: &Sidecar<'_, C>) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(file), contents)?;
    fs::write(dir.join(sidecar_name(file)), json_string(sidecar)?)?;
    Ok(())
}
