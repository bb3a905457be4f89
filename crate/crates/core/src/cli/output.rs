//! Table, CSV and JSON rendering of flat records.

use std::io::Write;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::invalid(
                "format",
                format!("`{other}` is not table, csv or json"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Cell {
    /// 12 significant digits for numbers.
    fn table(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.11e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    /// Shortest representation that round-trips.
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:e}"),
            other => other.table(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    pub fields: Vec<(String, Cell)>,
}

impl Record {
    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Cell>) -> &mut Self {
        self.fields.push((key.into(), value.into()));
        self
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .fields
            .iter()
            .map(|(k, v)| (k.clone(), v.json()))
            .collect();
        Value::Object(map)
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Config(format!("write failed: {e}"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("csv: {e}"))
}

/// One record: `key  value` lines, a header plus one CSV row, or a JSON object.
pub fn write_record(out: &mut dyn Write, format: Format, record: &Record) -> Result<()> {
    match format {
        Format::Table => {
            let width = record
                .fields
                .iter()
                .map(|(k, _)| k.len())
                .max()
                .unwrap_or(0);
            for (k, v) in &record.fields {
                writeln!(out, "{k:<width$}  {}", v.table()).map_err(io)?;
            }
            Ok(())
        }
        Format::Csv => write_rows(out, format, std::slice::from_ref(record)),
        Format::Json => {
            let text = serde_json::to_string_pretty(&record.to_json())
                .map_err(|e| Error::Config(format!("json: {e}")))?;
            writeln!(out, "{text}").map_err(io)
        }
    }
}

/// Several records sharing the keys of the first.
pub fn write_rows(out: &mut dyn Write, format: Format, rows: &[Record]) -> Result<()> {
    match format {
        Format::Table => {
            let Some(first) = rows.first() else {
                return Ok(());
            };
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.fields.iter().map(|(_, v)| v.table()).collect())
                .collect();
            let widths: Vec<usize> = first
                .fields
                .iter()
                .enumerate()
                .map(|(i, (k, _))| {
                    cells
                        .iter()
                        .filter_map(|row| row.get(i).map(String::len))
                        .chain([k.len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let header: Vec<String> = first
                .fields
                .iter()
                .zip(&widths)
                .map(|((k, _), w)| format!("{k:<w$}"))
                .collect();
            writeln!(out, "{}", header.join("  ").trim_end()).map_err(io)?;
            for row in &cells {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                writeln!(out, "{}", line.join("  ").trim_end()).map_err(io)?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = rows.first() {
                w.write_record(first.fields.iter().map(|(k, _)| k.as_str()))
                    .map_err(csv_err)?;
            }
            for r in rows {
                w.write_record(r.fields.iter().map(|(_, v)| v.csv()))
                    .map_err(csv_err)?;
            }
            w.flush().map_err(io)
        }
        Format::Json => {
            let arr = Value::Array(rows.iter().map(Record::to_json).collect());
            let text = serde_json::to_string_pretty(&arr)
                .map_err(|e| Error::Config(format!("json: {e}")))?;
            writeln!(out, "{text}").map_err(io)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Record {
        let mut r = Record::default();
        r.push("L", 1.0301234567891e-4).push("method", "asymptotic");
        r
    }

    #[test]
    fn table_uses_twelve_digits() {
        let mut buf = Vec::new();
        write_record(&mut buf, Format::Table, &sample()).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.contains("1.03012345679e-4"), "{s}");
    }

    #[test]
    fn csv_round_trips_full_precision() {
        let mut buf = Vec::new();
        write_record(&mut buf, Format::Csv, &sample()).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("L,method"));
        let v: f64 = lines
            .next()
            .unwrap()
            .split(',')
            .next()
            .unwrap()
            .parse()
            .unwrap();
        assert_eq!(v, 1.0301234567891e-4);
    }

    #[test]
    fn json_object() {
        let v = sample().to_json();
        assert_eq!(v["method"], "asymptotic");
        assert_eq!(v["L"].as_f64(), Some(1.0301234567891e-4));
    }
}
