//! CSV tables with a `#`-prefixed JSON metadata line. Floats are written with 17
//! significant digits so that every value re-parses to the same bits.

use crate::error::{SimError, SimResult};
use serde_json::Value;
use std::io::Write;

/// One CSV cell.
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

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
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

/// `{:.16e}`: 17 significant digits, enough for an exact round trip.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
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

/// A metadata object, a header and rows of equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(meta: Value, header: &[&str]) -> Self {
        Table { meta, header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> SimResult<()> {
        if row.len() != self.header.len() {
            return Err(SimError::Output(format!("row has {} cells, header has {}", row.len(), self.header.len())));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> SimResult<()> {
        let meta = serde_json::to_string(&self.meta).map_err(|e| SimError::Output(e.to_string()))?;
        writeln!(out, "# {meta}").map_err(|e| SimError::Output(e.to_string()))?;
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| SimError::Output(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(io)?;
        }
        w.flush().map_err(|e| SimError::Output(e.to_string()))
    }

    pub fn to_csv_string(&self) -> SimResult<String> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        String::from_utf8(buf).map_err(|e| SimError::Output(e.to_string()))
    }
}

/// Text parsed back from an emitted table.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTable {
    pub meta: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ParsedTable {
    pub fn column(&self, name: &str) -> SimResult<usize> {
        self.header.iter().position(|h| h == name).ok_or_else(|| SimError::Output(format!("no column '{name}'")))
    }

    pub fn floats(&self, name: &str) -> SimResult<Vec<f64>> {
        let k = self.column(name)?;
        self.rows
            .iter()
            .map(|r| r[k].parse::<f64>().map_err(|e| SimError::Output(format!("column '{name}': {e}"))))
            .collect()
    }
}

/// Parses the format written by [`Table::write_to`].
pub fn parse_table(text: &str) -> SimResult<ParsedTable> {
    let (first, rest) = text.split_once('\n').ok_or_else(|| SimError::Output("empty table".into()))?;
    let json = first.strip_prefix('#').ok_or_else(|| SimError::Output("missing '#' metadata line".into()))?;
    let meta = serde_json::from_str(json.trim()).map_err(|e| SimError::Output(format!("metadata: {e}")))?;
    let mut r = csv::Reader::from_reader(rest.as_bytes());
    let io = |e: csv::Error| SimError::Output(e.to_string());
    let header = r.headers().map_err(io)?.iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()).map_err(io))
        .collect::<SimResult<_>>()?;
    Ok(ParsedTable { meta, header, rows })
}
