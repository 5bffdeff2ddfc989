//! CSV ingestion with line diagnostics, and a small typed table that can be
//! written as CSV or JSON.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde_json::{Map, Number, Value};

use crate::config::Format;
use crate::error::CliError;

/// Parsed CSV with its header index and source line numbers.
pub struct Input {
    columns: HashMap<String, usize>,
    pub records: Vec<(u64, csv::StringRecord)>,
}

impl Input {
    pub fn read(path: Option<&Path>) -> Result<Input, CliError> {
        let mut text = String::new();
        match path {
            Some(p) if p != Path::new("-") => File::open(p)
                .and_then(|mut f| f.read_to_string(&mut text))
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?,
            _ => io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?,
        };
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let headers = reader.headers().map_err(|e| CliError::Input(format!("header: {e}")))?.clone();
        let columns = headers.iter().enumerate().map(|(i, h)| (h.to_ascii_lowercase(), i)).collect();
        let mut records = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                CliError::Input(format!("line {line}: {e}"))
            })?;
            let line = rec.position().map_or(0, |p| p.line());
            records.push((line, rec));
        }
        Ok(Input { columns, records })
    }

    pub fn has(&self, names: &[&str]) -> bool {
        names.iter().all(|n| self.columns.contains_key(*n))
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty() && self.records.is_empty()
    }

    pub fn text<'a>(&self, line: u64, rec: &'a csv::StringRecord, name: &str) -> Result<&'a str, CliError> {
        let idx = self.columns[name];
        rec.get(idx).ok_or_else(|| CliError::Input(format!("line {line}: missing column '{name}'")))
    }

    /// Text of an optional column; absent columns and blank cells are `None`.
    pub fn optional<'a>(&self, rec: &'a csv::StringRecord, name: &str) -> Option<&'a str> {
        let idx = *self.columns.get(name)?;
        rec.get(idx).filter(|s| !s.is_empty())
    }

    pub fn number(&self, line: u64, rec: &csv::StringRecord, name: &str) -> Result<f64, CliError> {
        let s = self.text(line, rec, name)?;
        parse_number(s).ok_or_else(|| CliError::Input(format!("line {line}: column '{name}' is not a number: '{s}'")))
    }
}

/// Finite or infinite real; NaN is rejected.
pub fn parse_number(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| !v.is_nan())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    /// Rounded to the configured significant digits.
    Num(f64),
    /// Shortest text that parses back to the same `f64`.
    Exact(f64),
    Int(u64),
    Bool(bool),
    Empty,
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Cell {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// `x` with `digits` significant digits, trailing zeros dropped; switches to
/// exponent notation outside `1e-5 ..= 10^digits`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.is_nan() {
        return "nan".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        return format!("{m}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Round every float in a JSON value to `digits` significant digits.
pub fn round_json(v: Value, digits: usize) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            Number::from_f64(format_sig(x, digits).parse().expect("formatted number")).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(|x| round_json(x, digits)).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, x)| (k, round_json(x, digits))).collect()),
        other => other,
    }
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Table {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn csv_cell(cell: &Cell, digits: usize) -> String {
        match cell {
            Cell::Text(s) => s.clone(),
            Cell::Num(x) => format_sig(*x, digits),
            Cell::Exact(x) => format!("{x}"),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json_cell(cell: &Cell, digits: usize) -> Value {
        let num = |x: f64| Number::from_f64(x).map_or(Value::Null, Value::Number);
        match cell {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Num(x) if x.is_finite() => num(format_sig(*x, digits).parse().expect("formatted number")),
            Cell::Exact(x) if x.is_finite() => num(*x),
            // JSON has no infinities; keep them readable as strings.
            Cell::Num(x) | Cell::Exact(x) => Value::String(format_sig(*x, digits)),
            Cell::Int(n) => Value::from(*n),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }

    pub fn to_json(&self, digits: usize) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .header
                        .iter()
                        .zip(row)
                        .map(|(h, c)| (h.to_string(), Table::json_cell(c, digits)))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn write_csv(&self, out: &mut dyn Write, digits: usize) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        let io_err = |e: csv::Error| CliError::Output(io::Error::other(e));
        w.write_record(&self.header).map_err(io_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| Table::csv_cell(c, digits))).map_err(io_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| CliError::Config(format!("cannot create {}: {e}", p.display())))?;
            Ok(Box::new(io::BufWriter::new(f)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

/// Emit `table`, wrapping it in `extra` fields for JSON output when given.
pub fn emit(
    table: &Table,
    format: Format,
    digits: usize,
    out: Option<&PathBuf>,
    extra: Option<Map<String, Value>>,
) -> Result<(), CliError> {
    let mut w = open_output(out)?;
    match format {
        Format::Csv => table.write_csv(&mut w, digits)?,
        Format::Json => {
            let rows = table.to_json(digits);
            let value = match extra {
                Some(mut obj) => {
                    obj.insert("rows".into(), rows);
                    Value::Object(obj)
                }
                None => rows,
            };
            serde_json::to_writer_pretty(&mut w, &value).map_err(|e| CliError::Output(e.into()))?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}
