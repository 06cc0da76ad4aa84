//! Tables, JSON documents and gnuplot scripts.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::args::{Format, OutputArgs};
use crate::error::{CliError, CliResult};

pub const SCHEMA: &str = "qtst/1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => number(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Int(n) => json!(n),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// Shortest round-trip text; exponent notation for very small or large magnitudes.
fn number(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<Option<bool>> for Cell {
    fn from(b: Option<bool>) -> Self {
        b.map_or(Cell::Empty, Cell::Bool)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Zero-based columns drawn against column 0 by the gnuplot script.
    pub plot: Vec<usize>,
    pub log_y: bool,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn plotting(mut self, columns: &[usize], log_y: bool) -> Self {
        self.plot = columns.to_vec();
        self.log_y = log_y;
        self
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let err = |e: csv::Error| CliError::config(e.to_string());
        w.write_record(&self.columns).map_err(err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::config(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::config(e.to_string()))
    }

    fn json_rows(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect();
                Value::Object(m)
            })
            .collect();
        Value::Array(rows)
    }
}

/// Everything a command produces.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub table: Table,
    pub result: Option<Value>,
    pub warnings: Vec<String>,
    pub default_format: Format,
    /// The command already wrote its own gnuplot script.
    pub gnuplot_written: bool,
}

impl Report {
    pub fn new(command: &'static str, parameters: Map<String, Value>, table: Table) -> Self {
        Self {
            command,
            parameters,
            table,
            result: None,
            warnings: Vec::new(),
            default_format: Format::Csv,
            gnuplot_written: false,
        }
    }

    pub fn with_result(mut self, result: Value) -> Self {
        self.result = Some(result);
        self.default_format = Format::Json;
        self
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA));
        doc.insert("command".into(), json!(self.command));
        doc.insert("parameters".into(), Value::Object(self.parameters.clone()));
        doc.insert("columns".into(), json!(self.table.columns));
        doc.insert("rows".into(), self.table.json_rows());
        if let Some(r) = &self.result {
            doc.insert("result".into(), r.clone());
        }
        doc.insert("warnings".into(), json!(self.warnings));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).map_err(|e| CliError::config(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

/// Writes the report in the requested format, plus the gnuplot script.
pub fn emit(report: &Report, out: &OutputArgs) -> CliResult<()> {
    let format = out.format.unwrap_or(report.default_format);
    let script = out.gnuplot.as_ref().filter(|_| !report.gnuplot_written);
    if script.is_some() && (out.out.is_none() || format != Format::Csv) {
        return Err(CliError::config("--gnuplot needs --out and CSV output"));
    }
    let text = match format {
        Format::Csv => report.table.to_csv()?,
        Format::Json => report.to_json()?,
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    match &out.out {
        Some(path) => write_file(path, &text)?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::config(format!("stdout: {e}")))?,
    }
    if let (Some(script), Some(data)) = (script, &out.out) {
        write_file(script, &gnuplot_script(&report.table, data, None))?;
    }
    Ok(())
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Gnuplot script plotting `table` as stored in `data`, optionally with
/// measured points from a second CSV drawn as symbols.
pub fn gnuplot_script(table: &Table, data: &Path, points: Option<&Path>) -> String {
    let quote = |p: &Path| p.display().to_string().replace('\'', "''");
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str(&format!("set xlabel '{}'\n", table.columns[0]));
    if table.log_y {
        s.push_str("set logscale y\n");
    }
    let mut curves: Vec<String> = table
        .plot
        .iter()
        .map(|&c| format!("'{}' using 1:{} with lines", quote(data), c + 1))
        .collect();
    if let Some(p) = points {
        curves.push(format!("'{}' using 1:2 with points pt 7", quote(p)));
    }
    s.push_str(&format!("plot {}\n", curves.join(", \\\n     ")));
    s
}
