//! Check records and tables, rendered as JSON, markdown or CSV.
//!
//! Floats are written with 17 significant digits so that reports round-trip
//! exactly and identical runs produce identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Markdown,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "markdown" | "md" => Ok(Self::Markdown),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::BadParams(format!("unknown output format {s:?}"))),
        }
    }
}

/// `{:.16e}`, or `None` for values JSON cannot carry.
pub fn format_float(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

/// A single value in a report.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    /// `(value, multiplicity)` groups of a spectrum.
    Spectrum(Vec<(f64, usize)>),
    Null,
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x).unwrap_or_else(|| x.to_string()),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Spectrum(groups) => groups
                .iter()
                .map(|(v, k)| format!("{}:{k}", short(*v)))
                .collect::<Vec<_>>()
                .join(" "),
            Cell::Null => String::new(),
        }
    }
}

/// Short human-readable float for markdown and spectrum summaries.
fn short(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.abs() >= 1e-3 && x.abs() < 1e4 {
        let s = format!("{x:.10}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{x:.3e}")
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match format_float(self.0) {
            Some(text) => RawValue::from_string(text)
                .map_err(serde::ser::Error::custom)?
                .serialize(s),
            None => s.serialize_none(),
        }
    }
}

#[derive(Serialize)]
struct Group {
    value: Num,
    mult: usize,
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Float(x) => Num(*x).serialize(s),
            Cell::Int(i) => s.serialize_i64(*i),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Spectrum(groups) => groups
                .iter()
                .map(|&(v, k)| Group { value: Num(v), mult: k })
                .collect::<Vec<_>>()
                .serialize(s),
            Cell::Null => s.serialize_none(),
        }
    }
}

/// One verified statement: pass iff `residual < tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub params: BTreeMap<String, Cell>,
    pub expected: Cell,
    pub computed: Cell,
    pub residual: Cell,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let mut params = BTreeMap::new();
        params.insert("tol".to_string(), Cell::Float(tolerance));
        Self {
            id: id.into(),
            params,
            expected: Cell::Null,
            computed: Cell::Null,
            residual: Cell::Float(residual),
            pass: residual < tolerance,
        }
    }

    /// A record for an exact statement such as a multiplicity count.
    pub fn exact(id: impl Into<String>, expected: impl Into<Cell>, computed: impl Into<Cell>) -> Self {
        let (expected, computed) = (expected.into(), computed.into());
        let residual = if expected == computed { 0.0 } else { 1.0 };
        Self {
            expected,
            computed,
            ..Self::new(id, residual, 0.5)
        }
    }

    /// A record for a failure that could not be measured.
    pub fn error(id: impl Into<String>, err: &Error) -> Self {
        Self {
            computed: Cell::Text(format!("error: {err}")),
            ..Self::new(id, f64::INFINITY, 0.0)
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn expected(mut self, value: impl Into<Cell>) -> Self {
        self.expected = value.into();
        self
    }

    pub fn computed(mut self, value: impl Into<Cell>) -> Self {
        self.computed = value.into();
        self
    }

    pub fn residual(&self) -> f64 {
        match self.residual {
            Cell::Float(x) => x,
            _ => f64::NAN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: BTreeMap<String, Cell>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Sorts the checks by id and computes the summary.
    pub fn new(config: BTreeMap<String, Cell>, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = checks.iter().filter(|c| c.pass).count();
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            OutputFormat::Markdown => self.to_markdown(),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Verification report (v{})\n", self.version);
        let _ = writeln!(out, "{}\n", params_text(&self.config));
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed\n",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        out.push_str("| id | params | expected | computed | residual | pass |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                c.id,
                params_text(&c.params),
                markdown_cell(&c.expected),
                markdown_cell(&c.computed),
                markdown_cell(&c.residual),
                if c.pass { "pass" } else { "FAIL" }
            );
        }
        out
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record(["id", "params", "expected", "computed", "residual", "pass"]);
        for c in &self.checks {
            let _ = w.write_record([
                c.id.clone(),
                params_text(&c.params),
                c.expected.plain(),
                c.computed.plain(),
                c.residual.plain(),
                c.pass.to_string(),
            ]);
        }
        String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
    }
}

fn markdown_cell(c: &Cell) -> String {
    match c {
        Cell::Float(x) => short(*x),
        other => other.plain().replace('|', "\\|"),
    }
}

fn params_text(params: &BTreeMap<String, Cell>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={}", markdown_cell(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// A titled table with named columns, for the table-printing commands.
#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub command: String,
    pub params: BTreeMap<String, Cell>,
    /// JSON key holding the rows.
    pub rows_key: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub pass: Option<bool>,
}

impl Serialize for TableReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Row<'a>(&'a [String], &'a [Cell]);
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0.iter().zip(self.1) {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
        }
        let rows: Vec<Row> = self.rows.iter().map(|r| Row(&self.columns, r)).collect();
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("command", &self.command)?;
        map.serialize_entry("params", &self.params)?;
        map.serialize_entry(&self.rows_key, &rows)?;
        if let Some(p) = self.pass {
            map.serialize_entry("pass", &p)?;
        }
        map.end()
    }
}

impl TableReport {
    pub fn new(command: &str, rows_key: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            params: BTreeMap::new(),
            rows_key: rows_key.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            pass: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("table serializes");
                s.push('\n');
                s
            }
            OutputFormat::Markdown => {
                let mut out = String::new();
                let _ = writeln!(out, "## {} ({})\n", self.command, params_text(&self.params));
                let _ = writeln!(out, "| {} |", self.columns.join(" | "));
                let _ = writeln!(out, "|{}", "---|".repeat(self.columns.len()));
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(markdown_cell).collect();
                    let _ = writeln!(out, "| {} |", cells.join(" | "));
                }
                if let Some(p) = self.pass {
                    let _ = writeln!(out, "\n{}", if p { "matches expected" } else { "MISMATCH" });
                }
                out
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let _ = w.write_record(&self.columns);
                for r in &self.rows {
                    let _ = w.write_record(r.iter().map(Cell::plain));
                }
                String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        let r = CheckRecord::new("a", 0.1, 1e-9);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("1.0000000000000001e-1"), "{json}");
        let back: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back["residual"].as_f64(), Some(0.1));
        assert_eq!(back["params"]["tol"].as_f64(), Some(1e-9));
        assert_eq!(back["pass"], false);
    }

    #[test]
    fn non_finite_becomes_null() {
        let r = CheckRecord::error("x", &Error::NormalKernel);
        let v: serde_json::Value = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert!(v["residual"].is_null());
        assert!(!r.pass);
    }

    #[test]
    fn summary_and_order() {
        let report = VerificationReport::new(
            BTreeMap::new(),
            vec![
                CheckRecord::exact("b", 2usize, 2usize),
                CheckRecord::exact("a", 1usize, 2usize),
            ],
        );
        assert_eq!(report.checks[0].id, "a");
        assert_eq!(
            report.summary,
            Summary {
                total: 2,
                passed: 1,
                failed: 1
            }
        );
        let csv = report.render(OutputFormat::Csv);
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn table_json_uses_rows_key() {
        let mut t = TableReport::new("horosphere", "groups", &["value", "mult"]);
        t.push(vec![Cell::Float(0.0), Cell::Int(4)]);
        let v: serde_json::Value = serde_json::from_str(&t.render(OutputFormat::Json)).unwrap();
        assert_eq!(v["groups"][0]["mult"], 4);
        assert_eq!(v["groups"][0]["value"].as_f64(), Some(0.0));
    }
}
