//! Plot-ready result tables and their CSV and JSON encodings.
//!
//! Floating-point cells are written with 17 significant digits, which is
//! enough to read every `f64` back bit for bit. A CSV file holds one table
//! with a single header row; a JSON file holds a [`ResultSet`], i.e. the
//! echoed configuration together with every table of the run.

use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::Format;
use crate::error::{Error, Result};

/// Version tag written into every JSON result.
pub const SCHEMA: &str = "hubcorr-result/1";

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Value {
    /// Numeric content, if any.
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(i) => Some(*i as f64),
            Value::Float(x) => Some(*x),
            Value::Text(_) => None,
        }
    }

    fn parse(text: &str) -> Value {
        if let Ok(i) = text.parse::<i64>() {
            return Value::Int(i);
        }
        match text.parse::<f64>() {
            Ok(x) => Value::Float(x),
            Err(_) => Value::Text(text.to_string()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Float(x) if x.is_finite() => write!(f, "{x:.16e}"),
            Value::Float(x) => write!(f, "{x}"),
            Value::Text(s) => write!(f, "{s}"),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<usize> for Value {
    fn from(i: usize) -> Self {
        Value::Int(i as i64)
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Text(if b { "pass" } else { "fail" }.into())
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.into())
    }
}

/// A named table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    /// Empty table with the given header.
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; its length must match the header.
    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width of table {}", self.name);
        self.rows.push(row);
    }

    /// Index of a column by name.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric column by name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        self.rows.iter().map(|r| r[i].as_f64()).collect()
    }

    /// Writes the table as CSV.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.to_string())).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a CSV table written by [`Table::write_csv`].
    pub fn read_csv<R: Read>(name: &str, input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let columns = r.headers().map_err(csv_error)?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            rows.push(rec.map_err(csv_error)?.iter().map(Value::parse).collect());
        }
        Ok(Table {
            name: name.into(),
            columns,
            rows,
        })
    }
}

fn csv_error(e: csv::Error) -> Error {
    if e.is_io_error() {
        Error::Io(e.into())
    } else {
        Error::Format(e.to_string())
    }
}

/// Every table of one run together with the configuration that made it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultSet {
    pub schema: String,
    /// Echo of the inputs.
    pub inputs: serde_json::Value,
    pub tables: Vec<Table>,
}

impl ResultSet {
    pub fn new(inputs: serde_json::Value, tables: Vec<Table>) -> Self {
        ResultSet {
            schema: SCHEMA.into(),
            inputs,
            tables,
        }
    }

    /// Table by name.
    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// JSON text. Floats are written in their shortest exact form.
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Format(e.to_string()))
    }

    /// Parses JSON written by [`ResultSet::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        let r: ResultSet = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if r.schema != SCHEMA {
            return Err(Error::Format(format!("unknown schema `{}`", r.schema)));
        }
        Ok(r)
    }

    /// Writes the result to `path`, or to standard output when `None`.
    ///
    /// With CSV and several tables, each table goes to its own file named
    /// `<stem>.<table>.csv`; on standard output the tables follow each other
    /// separated by blank lines. Returns the files written.
    pub fn write(&self, path: Option<&Path>, format: Format) -> Result<Vec<PathBuf>> {
        match (format, path) {
            (Format::Json, None) => {
                writeln!(std::io::stdout().lock(), "{}", self.to_json()?)?;
                Ok(Vec::new())
            }
            (Format::Json, Some(p)) => {
                std::fs::write(p, self.to_json()? + "\n")?;
                Ok(vec![p.to_path_buf()])
            }
            (Format::Csv, None) => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        writeln!(lock)?;
                    }
                    t.write_csv(&mut lock)?;
                }
                Ok(Vec::new())
            }
            (Format::Csv, Some(p)) => {
                let mut written = Vec::new();
                for t in &self.tables {
                    let target = if self.tables.len() == 1 {
                        p.to_path_buf()
                    } else {
                        table_path(p, &t.name)
                    };
                    t.write_csv(std::fs::File::create(&target)?)?;
                    written.push(target);
                }
                Ok(written)
            }
        }
    }
}

/// `dir/stem.csv` becomes `dir/stem.<name>.csv`.
pub fn table_path(path: &Path, name: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{name}.csv"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", &["k", "omega", "method"]);
        t.push(vec![0usize.into(), 0.1f64.into(), "ode".into()]);
        t.push(vec![1usize.into(), (1.0f64 / 3.0).into(), "exact".into()]);
        t
    }

    #[test]
    fn csv_has_one_header_and_seventeen_digits() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k,omega,method");
        assert_eq!(lines[2], "1,3.3333333333333331e-1,exact");
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn csv_and_json_round_trip() {
        let t = sample();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(Table::read_csv("demo", buf.as_slice()).unwrap(), t);
        let r = ResultSet::new(serde_json::json!({"J": 0.1}), vec![t]);
        assert_eq!(ResultSet::from_json(&r.to_json().unwrap()).unwrap(), r);
        assert!(ResultSet::from_json("{\"schema\":\"x\",\"inputs\":null,\"tables\":[]}").is_err());
    }

    #[test]
    fn table_paths() {
        assert_eq!(table_path(Path::new("out/run.csv"), "spectrum"), PathBuf::from("out/run.spectrum.csv"));
    }

    proptest! {
        #[test]
        fn floats_survive_csv(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let mut t = Table::new("x", &["x"]);
            t.push(vec![x.into()]);
            let mut buf = Vec::new();
            t.write_csv(&mut buf).unwrap();
            let back = Table::read_csv("x", buf.as_slice()).unwrap();
            prop_assert_eq!(back.column("x").unwrap()[0].to_bits(), x.to_bits());
        }

        #[test]
        fn floats_survive_json(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let mut t = Table::new("x", &["x"]);
            t.push(vec![x.into()]);
            let r = ResultSet::new(serde_json::Value::Null, vec![t]);
            let back = ResultSet::from_json(&r.to_json().unwrap()).unwrap();
            prop_assert_eq!(back.tables[0].column("x").unwrap()[0].to_bits(), x.to_bits());
        }
    }
}
