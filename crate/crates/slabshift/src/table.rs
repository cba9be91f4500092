//! Tabular output: CSV with a `#`-prefixed manifest block, or JSON.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    /// Seventeen significant digits in scientific notation, which round-trips
    /// every `f64` exactly.
    pub fn render(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) if x.is_finite() => Value::from(*x),
            Cell::Float(x) => Value::from(format_float(*x)),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

/// Provenance of a table: tool version, command, echoed inputs, timestamp.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub command: String,
    pub timestamp: String,
    pub entries: Vec<(String, String)>,
    /// Resolved configuration as TOML.
    pub config: String,
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        Manifest {
            tool: format!("slabshift {}", env!("CARGO_PKG_VERSION")),
            command: command.into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            entries: Vec::new(),
            config: String::new(),
        }
    }

    pub fn entry(mut self, key: &str, value: impl ToString) -> Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn with_config(mut self, toml: String) -> Self {
        self.config = toml;
        self
    }

    fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("tool: {}", self.tool),
            format!("command: {}", self.command),
            format!("timestamp: {}", self.timestamp),
        ];
        out.extend(self.entries.iter().map(|(k, v)| format!("{k}: {v}")));
        if !self.config.is_empty() {
            out.push("config:".into());
            out.extend(self.config.lines().filter(|l| !l.is_empty()).map(|l| format!("  {l}")));
        }
        out
    }

    fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert("tool".into(), self.tool.clone().into());
        m.insert("command".into(), self.command.clone().into());
        m.insert("timestamp".into(), self.timestamp.clone().into());
        for (k, v) in &self.entries {
            m.insert(k.clone(), v.clone().into());
        }
        if !self.config.is_empty() {
            m.insert("config".into(), self.config.clone().into());
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn write<W: Write>(&self, manifest: &Manifest, format: Format, out: W) -> CliResult<()> {
        match format {
            Format::Csv => self.write_csv(manifest, out),
            Format::Json => self.write_json(manifest, out),
        }
    }

    pub fn write_csv<W: Write>(&self, manifest: &Manifest, mut out: W) -> CliResult<()> {
        for line in manifest.lines() {
            writeln!(out, "# {line}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, manifest: &Manifest, mut out: W) -> CliResult<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().map(Cell::json)).collect()))
            .collect();
        let doc = serde_json::json!({ "manifest": manifest.json(), "rows": rows });
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)?;
        Ok(())
    }
}
