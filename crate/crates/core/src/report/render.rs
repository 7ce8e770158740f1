//! Tabular reports and their CSV / JSON encodings.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format_sig6(*v),
            Cell::Text(s) => s.replace([',', '\n', '\r'], ";"),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Num(v) => Number::from_f64(round_sig6(*v))
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// Rounds to six significant digits (non-finite values pass through).
pub fn round_sig6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.5e}")
        .parse()
        .expect("scientific notation from `format!` always reparses")
}

/// Fixed-point decimal with at most six significant digits.
pub fn format_sig6(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // f64's Display never switches to exponent notation
    format!("{}", round_sig6(x))
}

/// One command's output: a fixed column set plus any number of rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub inputs: Vec<(&'static str, Cell)>,
    pub metadata: Vec<(&'static str, Cell)>,
    /// When set, JSON output carries this object under `result` in place of
    /// `rows`.
    pub nested: Option<Value>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            columns,
            rows: Vec::new(),
            inputs: Vec::new(),
            metadata: Vec::new(),
            nested: None,
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let pairs = |items: &[(&'static str, Cell)]| {
            Value::Object(
                items
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.to_json()))
                    .collect::<Map<_, _>>(),
            )
        };
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.into()));
        top.insert("inputs".into(), pairs(&self.inputs));
        match &self.nested {
            Some(v) => {
                top.insert("result".into(), v.clone());
            }
            None => {
                let rows = self
                    .rows
                    .iter()
                    .map(|row| {
                        Value::Object(
                            self.columns
                                .iter()
                                .zip(row)
                                .map(|(k, v)| (k.to_string(), v.to_json()))
                                .collect(),
                        )
                    })
                    .collect();
                top.insert("rows".into(), Value::Array(rows));
            }
        }
        top.insert("metadata".into(), pairs(&self.metadata));
        Value::Object(top)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json())
            .expect("report JSON is always serializable");
        s.push('\n');
        s
    }
}
