//! Tabular output shared by the experiments and the CLI.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};

/// Shortest scientific form carrying 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_f64(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            // NaN and infinities have no JSON number form
            Cell::Num(x) => Number::from_f64(*x).map_or_else(|| Value::String(format_f64(*x)), Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Numeric column by name.
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let j = self
            .column_index(name)
            .ok_or_else(|| Error::InvalidInput(format!("table has no column `{name}`")))?;
        self.rows
            .iter()
            .map(|r| r[j].as_f64().ok_or_else(|| Error::parse(name, "expected a number")))
            .collect()
    }

    /// Rows whose column `name` equals `value` exactly.
    pub fn filter_eq(&self, name: &str, value: f64) -> Result<Table> {
        let j = self
            .column_index(name)
            .ok_or_else(|| Error::InvalidInput(format!("table has no column `{name}`")))?;
        let rows = self.rows.iter().filter(|r| r[j].as_f64() == Some(value)).cloned().collect();
        Ok(Table { header: self.header.clone(), rows })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    /// The same rows as an array of records keyed by the header.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.header.iter().cloned().zip(row.iter().map(Cell::to_json)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, &self.to_json())?;
        out.write_all(b"\n")?;
        Ok(())
    }

    /// Reads a CSV with a header row; cells that parse as numbers become numeric.
    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Table> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
        let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
        let mut table = Table { header, rows: Vec::new() };
        for record in r.records() {
            let record = record?;
            let row = record
                .iter()
                .map(|s| match s.trim().parse::<f64>() {
                    Ok(x) => Cell::Num(x),
                    Err(_) => Cell::Text(s.to_owned()),
                })
                .collect();
            table.rows.push(row);
        }
        Ok(table)
    }
}
