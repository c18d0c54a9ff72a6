//! Report tables and their CSV / markdown renderings.

use std::fmt::Write as _;

use super::config::{ExperimentConfig, OutputFormat};
use crate::error::Result;

/// Token printed for a cell whose estimator failed.
pub const ERROR_TOKEN: &str = "ERR";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Value(f64),
    /// Estimator failure; the message goes to the report metadata.
    Error(String),
}

impl Cell {
    pub fn value(&self) -> Option<f64> {
        match self {
            Cell::Value(v) => Some(*v),
            Cell::Error(_) => None,
        }
    }
}

impl From<Result<f64>> for Cell {
    fn from(r: Result<f64>) -> Self {
        match r {
            Ok(v) => Cell::Value(v),
            Err(e) => Cell::Error(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub n: usize,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportTable {
    pub caption: String,
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
    /// `(key, value)` echo of the config plus the artifact version.
    pub metadata: Vec<(String, String)>,
}

impl ReportTable {
    pub fn cell(&self, n: usize, column: &str) -> Option<&Cell> {
        let j = self.columns.iter().position(|c| c == column)?;
        self.rows.iter().find(|r| r.n == n)?.cells.get(j)
    }

    /// The numeric column, or `None` if the column is missing or any cell is an error.
    pub fn column_values(&self, column: &str) -> Option<Vec<(usize, f64)>> {
        let j = self.columns.iter().position(|c| c == column)?;
        self.rows.iter().map(|r| Some((r.n, r.cells.get(j)?.value()?))).collect()
    }

    fn errors(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.rows {
            for (c, cell) in self.columns.iter().zip(&r.cells) {
                if let Cell::Error(msg) = cell {
                    out.push(format!("n={} {c}: {msg}", r.n));
                }
            }
        }
        out
    }
}

pub(crate) fn metadata(cfg: &ExperimentConfig) -> Vec<(String, String)> {
    let mut m = vec![("version".to_string(), env!("CARGO_PKG_VERSION").to_string())];
    m.extend(cfg.to_pairs());
    m
}

/// Nine significant digits in positional notation (scientific outside `1e-7..1e21`).
pub fn format_value(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-7..21).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp < 0 {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    } else {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            format!("{digits}{}", "0".repeat(int_len - digits.len()))
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    };
    format!("{sign}{body}")
}

fn cell_text(cell: &Cell) -> String {
    match cell {
        Cell::Value(v) => format_value(*v),
        Cell::Error(_) => ERROR_TOKEN.to_string(),
    }
}

fn one_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

pub fn emit_report(report: &ReportTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => emit_csv(report),
        OutputFormat::Markdown => emit_markdown(report),
    }
}

fn emit_csv(report: &ReportTable) -> String {
    let mut out = String::new();
    for (k, v) in &report.metadata {
        let _ = writeln!(out, "# {k} = {}", one_line(v));
    }
    for e in report.errors() {
        let _ = writeln!(out, "# error: {}", one_line(&e));
    }
    let _ = writeln!(out, "n,{}", report.columns.join(","));
    for r in &report.rows {
        let cells: Vec<String> = r.cells.iter().map(cell_text).collect();
        let _ = writeln!(out, "{},{}", r.n, cells.join(","));
    }
    out
}

fn emit_markdown(report: &ReportTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "**{}**\n", one_line(&report.caption));
    let _ = writeln!(out, "| n | {} |", report.columns.join(" | "));
    let _ = writeln!(out, "|---:|{}", "---:|".repeat(report.columns.len()));
    for r in &report.rows {
        let cells: Vec<String> = r.cells.iter().map(cell_text).collect();
        let _ = writeln!(out, "| {} | {} |", r.n, cells.join(" | "));
    }
    let _ = writeln!(out, "\n### Metadata\n");
    for (k, v) in &report.metadata {
        let _ = writeln!(out, "- `{k}` = `{}`", one_line(v));
    }
    let errors = report.errors();
    if !errors.is_empty() {
        let _ = writeln!(out, "\n### Errors\n");
        for e in errors {
            let _ = writeln!(out, "- {}", one_line(&e));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(cells: Vec<Cell>) -> ReportTable {
        ReportTable {
            caption: "t".into(),
            columns: (0..cells.len()).map(|i| format!("c{i}")).collect(),
            rows: vec![ReportRow { n: 50, cells }],
            metadata: vec![("version".into(), "0".into())],
        }
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_value(0.9944578831), "0.994457883");
        assert_eq!(format_value(54.095782713), "54.0957827");
        assert_eq!(format_value(1.0), "1.00000000");
        assert_eq!(format_value(-0.0012345678912), "-0.00123456789");
        assert_eq!(format_value(123456789012.0), "123456789000");
        assert_eq!(format_value(1e-9), "1.00000000e-9");
        assert_eq!(format_value(0.0), "0.00000000");
    }

    #[test]
    fn single_row_csv_shape() {
        let csv = emit_report(&table(vec![Cell::Value(0.5)]), OutputFormat::Csv);
        let data: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data, vec!["n,c0", "50,0.500000000"]);
    }

    #[test]
    fn error_cells_print_token() {
        let t = table(vec![Cell::Value(1.0), Cell::Error("boom".into())]);
        let csv = emit_report(&t, OutputFormat::Csv);
        assert!(csv.lines().any(|l| l == "50,1.00000000,ERR"));
        assert!(csv.contains("# error: n=50 c1: boom"));
        let md = emit_report(&t, OutputFormat::Markdown);
        assert!(md.contains("| 50 | 1.00000000 | ERR |"));
        assert!(t.column_values("c1").is_none());
        assert_eq!(t.column_values("c0"), Some(vec![(50, 1.0)]));
    }
}
