//! One result shape for every subcommand, rendered as text, CSV or JSON lines.
//!
//! Text and CSV carry the header and summary as `# key: value` lines around
//! the table; JSON lines emit a header object, one object per row and a
//! summary object.

use std::fmt;
use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{json, Map, Value};
use ternmap::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    JsonLines,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Big(String),
    Float(f64),
    Bool(bool),
    Text(String),
}

/// `x` with 12 significant decimal digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Big(s) | Cell::Text(s) => f.write_str(s),
            Cell::Float(v) => f.write_str(&sig12(*v)),
            Cell::Bool(b) => write!(f, "{b}"),
        }
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Bool(b) => json!(b),
            // floats keep their fixed display precision, big integers stay exact
            Cell::Float(_) | Cell::Big(_) | Cell::Text(_) => json!(self.to_string()),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Text(s)
    }
}

impl From<&Rational> for Cell {
    fn from(q: &Rational) -> Cell {
        Cell::Text(format_rational(q))
    }
}

impl From<Rational> for Cell {
    fn from(q: Rational) -> Cell {
        Cell::from(&q)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Cell {
        Cell::Bool(b)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Float(v)
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Cell {
                Cell::Int(v as i128)
            }
        }
    )*};
}
int_cell!(u8, u32, u64, usize, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Nothing to check, or every check passed.
    Pass,
    /// A claimed property failed.
    Fail,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
    pub status: Status,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Report {
        Report {
            meta: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
            summary: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn meta(&mut self, key: &str, value: impl fmt::Display) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_string(), value.into()));
    }

    /// Records a property check; any failing check fails the report.
    pub fn check(&mut self, key: &str, ok: bool) {
        if !ok {
            self.status = Status::Fail;
        }
        self.summary(key, if ok { "pass" } else { "FAIL" });
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Text => self.render_text(out),
            Format::Csv => self.render_csv(out),
            Format::JsonLines => self.render_json(out),
        }
    }

    fn status_word(&self) -> &'static str {
        match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }

    fn render_text(&self, out: &mut dyn Write) -> io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {v}")?;
        }
        if !self.rows.is_empty() {
            let cells: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::to_string).collect())
                .collect();
            let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
            for r in &cells {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |fields: Vec<&str>| {
                let mut s = String::new();
                for (i, (f, w)) in fields.iter().zip(&widths).enumerate() {
                    if i > 0 {
                        s.push_str("  ");
                    }
                    s.push_str(f);
                    s.extend(std::iter::repeat(' ').take(w - f.chars().count()));
                }
                s.trim_end().to_string()
            };
            writeln!(out, "{}", line(self.columns.clone()))?;
            for r in &cells {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
            }
        }
        for (k, v) in &self.summary {
            writeln!(out, "{k}: {v}")?;
        }
        writeln!(out, "status: {}", self.status_word())
    }

    fn render_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {v}")?;
        }
        {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut *out);
            w.write_record(&self.columns)?;
            for r in &self.rows {
                w.write_record(r.iter().map(Cell::to_string))?;
            }
            w.flush()?;
        }
        for (k, v) in &self.summary {
            writeln!(out, "# {k}: {v}")?;
        }
        writeln!(out, "# status: {}", self.status_word())
    }

    fn render_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut header = Map::new();
        header.insert("type".into(), json!("header"));
        for (k, v) in &self.meta {
            header.insert(k.clone(), json!(v));
        }
        writeln!(out, "{}", Value::Object(header))?;
        for r in &self.rows {
            let mut obj = Map::new();
            obj.insert("type".into(), json!("row"));
            for (c, v) in self.columns.iter().zip(r) {
                obj.insert((*c).to_string(), v.to_json());
            }
            writeln!(out, "{}", Value::Object(obj))?;
        }
        let mut summary = Map::new();
        summary.insert("type".into(), json!("summary"));
        for (k, v) in &self.summary {
            summary.insert(k.clone(), v.to_json());
        }
        summary.insert("status".into(), json!(self.status_word()));
        writeln!(out, "{}", Value::Object(summary))
    }
}
