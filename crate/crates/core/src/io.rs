//! Output helpers: CSV with a provenance comment line, JSON with a meta block.

use crate::error::Result;
use crate::VERSION;
use serde_json::{json, Value};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// Destination: a file path or stdout.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

pub fn meta(command: &str, config: &Value) -> Value {
    json!({ "tool": "qwalk", "version": VERSION, "command": command, "config": config })
}

/// `# qwalk <version> <command> config: <json>`.
pub fn header_comment(command: &str, config: &Value) -> String {
    format!("# qwalk {VERSION} {command} config: {config}")
}

/// A cell: floats print in shortest round-trip form.
#[derive(Debug, Clone)]
pub enum Cell {
    F(f64),
    I(i64),
    S(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}
impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::I(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::I(v as i64)
    }
}
impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::I(v as i64)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::I(v as i64)
    }
}
impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::S(String::new()), Cell::F)
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::F(v) if v.is_nan() => write!(f, "nan"),
            Cell::F(v) if *v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&v.abs()) => write!(f, "{v}"),
            Cell::F(v) => write!(f, "{v:e}"),
            Cell::I(v) => write!(f, "{v}"),
            Cell::S(s) => write!(f, "{s}"),
        }
    }
}

pub struct CsvWriter {
    out: Box<dyn Write>,
    width: usize,
}

impl CsvWriter {
    pub fn new(mut out: Box<dyn Write>, comment: &str, columns: &[&str]) -> Result<Self> {
        writeln!(out, "{comment}")?;
        writeln!(out, "{}", columns.join(","))?;
        Ok(Self { out, width: columns.len() })
    }

    pub fn row(&mut self, cells: &[Cell]) -> Result<()> {
        debug_assert_eq!(cells.len(), self.width);
        let line: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
        writeln!(self.out, "{}", line.join(","))?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

pub fn write_json(out: Box<dyn Write>, value: &Value) -> Result<()> {
    let mut out = out;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}
