use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::units::Quantity;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!(
                "unknown format '{other}' (expected csv or json)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn io_err(e: std::io::Error) -> Error {
    Error::Config(format!("writing output: {e}"))
}

enum Cell {
    Number(f64),
    Integer(i64),
    Text(String),
}

/// Named scalar results with units; printed as `name,value,unit` rows or a
/// JSON object with a parallel `units` map.
#[derive(Default)]
pub struct Report {
    rows: Vec<(String, Cell, String)>,
    extra: Map<String, Value>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn number(&mut self, name: &str, value: f64, unit: &str) -> &mut Self {
        self.rows
            .push((name.into(), Cell::Number(value), unit.into()));
        self
    }

    pub fn quantity(&mut self, name: &str, q: &Quantity) -> &mut Self {
        self.number(name, q.value, &q.unit_label())
    }

    pub fn integer(&mut self, name: &str, value: i64) -> &mut Self {
        self.rows
            .push((name.into(), Cell::Integer(value), String::new()));
        self
    }

    pub fn text(&mut self, name: &str, value: &str) -> &mut Self {
        self.rows
            .push((name.into(), Cell::Text(value.into()), String::new()));
        self
    }

    /// JSON-only structured data, omitted from CSV.
    pub fn json_extra(&mut self, name: &str, value: Value) -> &mut Self {
        self.extra.insert(name.into(), value);
        self
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "name,value,unit").map_err(io_err)?;
                for (name, cell, unit) in &self.rows {
                    let value = match cell {
                        Cell::Number(x) => num(*x),
                        Cell::Integer(i) => i.to_string(),
                        Cell::Text(s) => csv_field(s),
                    };
                    writeln!(out, "{},{},{}", csv_field(name), value, csv_field(unit))
                        .map_err(io_err)?;
                }
            }
            Format::Json => {
                writeln!(out, "{}", self.to_json()).map_err(io_err)?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        let mut units = Map::new();
        for (name, cell, unit) in &self.rows {
            let value = match cell {
                Cell::Number(x) => json_num(*x),
                Cell::Integer(i) => Value::from(*i),
                Cell::Text(s) => Value::from(s.as_str()),
            };
            obj.insert(name.clone(), value);
            if !unit.is_empty() {
                units.insert(name.clone(), Value::from(unit.as_str()));
            }
        }
        obj.insert("units".into(), Value::Object(units));
        for (k, v) in &self.extra {
            obj.insert(k.clone(), v.clone());
        }
        Value::Object(obj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, -1.3001e-7, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn nan_becomes_null() {
        assert_eq!(json_num(f64::NAN), Value::Null);
    }
}
