//! Tabular results and their CSV / JSON encodings.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    /// Undefined for this row (e.g. `Δ_n` on the top level).
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
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

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Missing, Into::into)
    }
}

impl Cell {
    /// 17 significant digits for floats; round-trips every `f64`.
    fn to_csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Missing => Value::Null,
        }
    }
}

/// Named columns and rows of cells, one row per output record.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub schema_version: &'static str,
    pub command: String,
    pub params_echo: Map<String, Value>,
    pub rows: Vec<Map<String, Value>>,
}

impl OutputRecord {
    pub fn new(command: &str, params_echo: Map<String, Value>, table: &Table) -> Self {
        let rows = table
            .rows
            .iter()
            .map(|row| table.columns.iter().zip(row).map(|(c, v)| ((*c).to_owned(), v.to_json())).collect())
            .collect();
        Self { schema_version: SCHEMA_VERSION, command: command.to_owned(), params_echo, rows }
    }
}

pub fn write_csv(table: &Table, out: &mut dyn Write) -> std::io::Result<()> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    writer.write_record(&table.columns)?;
    for row in &table.rows {
        writer.write_record(row.iter().map(Cell::to_csv))?;
    }
    writer.flush()
}

pub fn write_json(record: &OutputRecord, out: &mut dyn Write) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, record)?;
    writeln!(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["series", "x", "n"]);
        t.push(vec!["a,b".into(), 0.1.into(), 3usize.into()]);
        t.push(vec!["c".into(), Cell::Missing, 4usize.into()]);
        t
    }

    #[test]
    fn csv_quotes_and_precision() {
        let mut buf = Vec::new();
        write_csv(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "series,x,n\n\"a,b\",1.0000000000000001e-1,3\nc,,4\n");
        let parsed: f64 = "1.0000000000000001e-1".parse().unwrap();
        assert_eq!(parsed, 0.1);
    }

    #[test]
    fn json_rows_are_named() {
        let record = OutputRecord::new("demo", Map::new(), &sample());
        let v = serde_json::to_value(&record).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["rows"][0]["x"], 0.1);
        assert!(v["rows"][1]["x"].is_null());
        assert_eq!(v["rows"][1]["n"], 4);
    }

    #[test]
    fn non_finite_numbers() {
        assert_eq!(Cell::Num(f64::NAN).to_json(), Value::Null);
        assert_eq!(Cell::Num(f64::INFINITY).to_csv(), "inf");
    }
}
