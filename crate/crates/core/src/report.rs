//! Tabular output and verification reports.
//!
//! CSV cells print floats with 17 significant digits. JSON output is a
//! `{meta, rows}` object with keys in column order.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    /// Undefined value (empty in CSV, `null` in JSON).
    Missing,
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Float)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Missing => String::new(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Missing => Value::Null,
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

/// Rows under fixed column names plus a metadata block.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Map<String, Value>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            meta: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::to_csv))?;
                }
                w.flush()
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(k, v)| (k.to_string(), v.to_json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut doc = Map::new();
                doc.insert("meta".into(), Value::Object(self.meta.clone()));
                doc.insert("rows".into(), Value::Array(rows));
                serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
                writeln!(out)
            }
        }
    }
}

/// How a measured value is compared with its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|measured - expected| <= tolerance`
    AbsDiff,
    /// `measured <= tolerance`
    AtMost,
    /// `measured >= tolerance`
    AtLeast,
}

/// One verification check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CheckRecord {
    pub fn new(
        name: impl Into<String>,
        measured: f64,
        expected: f64,
        tolerance: f64,
        comparison: Comparison,
    ) -> Self {
        let pass = match comparison {
            Comparison::AbsDiff => (measured - expected).abs() <= tolerance,
            Comparison::AtMost => measured <= tolerance,
            Comparison::AtLeast => measured >= tolerance,
        };
        Self {
            name: name.into(),
            measured,
            expected,
            tolerance,
            comparison,
            pass,
            note: String::new(),
        }
    }

    /// `measured <= tolerance`, with `expected = 0`.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self::new(name, measured, 0.0, tolerance, Comparison::AtMost)
    }

    pub fn failed(name: impl Into<String>, note: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            measured: f64::NAN,
            expected: f64::NAN,
            tolerance: f64::NAN,
            comparison: Comparison::AtMost,
            pass: false,
            note: note.into(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

/// Outcome of a `verify` run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: Map<String, Value>,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl RunReport {
    pub fn new(
        command: impl Into<String>,
        params: Map<String, Value>,
        checks: Vec<CheckRecord>,
    ) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            command: command.into(),
            params,
            checks,
            pass,
        }
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(vec![
            "name",
            "measured",
            "expected",
            "tolerance",
            "comparison",
            "pass",
            "note",
        ]);
        for c in &self.checks {
            let cmp = match c.comparison {
                Comparison::AbsDiff => "abs_diff",
                Comparison::AtMost => "at_most",
                Comparison::AtLeast => "at_least",
            };
            t.push(vec![
                c.name.clone().into(),
                c.measured.into(),
                c.expected.into(),
                c.tolerance.into(),
                cmp.into(),
                c.pass.into(),
                c.note.clone().into(),
            ]);
        }
        t.meta = self.params.clone();
        t
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.to_table().write(format, out),
            Format::Json => {
                // NaN is not representable in JSON; it maps to null.
                let value = serde_json::to_value(self).map_err(io::Error::other)?;
                serde_json::to_writer_pretty(&mut *out, &value)?;
                writeln!(out)
            }
        }
    }
}
