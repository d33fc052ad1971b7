//! Tables, fixed float formatting, CSV and JSON emitters.

use std::fmt::Write as _;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
    Null,
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

/// `%.15e` as printed by C: `1.644934066848226e+00`.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.15e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Output format of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A command's result: fixed columns, rows in input order, and optional
/// summary fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new(), summary: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.push((key, value.into()));
    }
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => fmt_float(*v),
        Cell::Str(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Str(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Null => String::new(),
    }
}

fn json_cell(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) if v.is_finite() => fmt_float(*v),
        Cell::Float(_) | Cell::Null => "null".into(),
        Cell::Str(s) => serde_json::to_string(s).expect("string serializes"),
        Cell::Bool(b) => b.to_string(),
    }
}

fn json_object(fields: &[(&str, Cell)], indent: &str) -> String {
    if fields.is_empty() {
        return "{}".into();
    }
    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("{indent}  {}: {}", serde_json::to_string(k).expect("key"), json_cell(v)))
        .collect();
    format!("{{\n{}\n{indent}}}", body.join(",\n"))
}

/// Renders metadata and table. The same inputs always give the same bytes.
pub fn render(format: Format, metadata: &[(&str, Cell)], table: &Table) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            for (k, v) in metadata {
                writeln!(out, "# {k}: {}", csv_cell(v)).unwrap();
            }
            for (k, v) in &table.summary {
                writeln!(out, "# summary.{k}: {}", csv_cell(v)).unwrap();
            }
            writeln!(out, "{}", table.columns.join(",")).unwrap();
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(csv_cell).collect();
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<String> = table
                .rows
                .iter()
                .map(|row| {
                    let fields: Vec<(&str, Cell)> =
                        table.columns.iter().copied().zip(row.iter().cloned()).collect();
                    format!("    {}", json_object(&fields, "    "))
                })
                .collect();
            let columns: Vec<String> =
                table.columns.iter().map(|c| serde_json::to_string(c).expect("column")).collect();
            writeln!(out, "{{").unwrap();
            writeln!(out, "  \"metadata\": {},", json_object(metadata, "  ")).unwrap();
            writeln!(out, "  \"summary\": {},", json_object(&table.summary, "  ")).unwrap();
            writeln!(out, "  \"columns\": [{}],", columns.join(", ")).unwrap();
            if rows.is_empty() {
                writeln!(out, "  \"rows\": []").unwrap();
            } else {
                writeln!(out, "  \"rows\": [\n{}\n  ]", rows.join(",\n")).unwrap();
            }
            writeln!(out, "}}").unwrap();
        }
    }
    out
}
