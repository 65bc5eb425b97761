//! Report rendering: plain-text and JSON serializations of verification
//! reports and sweep summaries, plus output-destination plumbing.
//!
//! The text form is byte-deterministic for a fixed input (it omits wall
//! times); the JSON form carries the full check records, including the
//! measured runtime.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;

use kummer_lattice::report::VerificationReport;

use crate::suites::SweepSummary;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Render a single verification report.
pub fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Text => render_report_text(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn render_report_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    match report.t {
        Some(t) => writeln!(out, "k = {}, t = {}", report.k, t).unwrap(),
        None => writeln!(out, "k = {}", report.k).unwrap(),
    }
    // Align the table on the `=` column: statuses are left-padded to a
    // common width and names right-aligned, which keeps each
    // `name = actual` phrase intact as a searchable substring.
    let status_w = report
        .checks
        .iter()
        .map(|c| c.status.to_string().len() + 2)
        .max()
        .unwrap_or(0);
    let name_w = report
        .checks
        .iter()
        .map(|c| c.name.len())
        .max()
        .unwrap_or(0);
    for check in &report.checks {
        writeln!(
            out,
            "{:<status_w$} {:>name_w$} = {} (expected {})",
            format!("[{}]", check.status),
            check.name,
            check.actual,
            check.expected
        )
        .unwrap();
    }
    let verdict = if report.passed() { "pass" } else { "fail" };
    writeln!(out, "result: {} ({} checks)", verdict, report.checks.len()).unwrap();
    out
}

/// Render a sweep summary.
pub fn render_sweep(summary: &SweepSummary, format: Format, runtime_ms: u64) -> String {
    match format {
        Format::Text => render_sweep_text(summary),
        Format::Json => {
            let value = serde_json::json!({
                "k_min": summary.k_min,
                "k_max": summary.k_max,
                "rows": summary
                    .rows
                    .iter()
                    .map(|row| serde_json::json!({
                        "label": row.label,
                        "values": row.values,
                    }))
                    .collect::<Vec<_>>(),
                "all_passed": summary.all_passed,
                "runtime_ms": runtime_ms,
                "reports": serde_json::to_value(&summary.reports)
                    .expect("reports serialize"),
            });
            let mut s = serde_json::to_string_pretty(&value).expect("summary serializes");
            s.push('\n');
            s
        }
    }
}

fn render_sweep_text(summary: &SweepSummary) -> String {
    let mut out = String::new();
    writeln!(out, "sweep k = {}..{}", summary.k_min, summary.k_max).unwrap();
    for row in &summary.rows {
        writeln!(out, "{} = {}", row.label, row.values.join(" ")).unwrap();
    }
    let verdict = if summary.all_passed { "pass" } else { "fail" };
    writeln!(out, "result: {verdict}").unwrap();
    out
}

/// Write rendered output to the chosen destination (stdout by default).
pub fn write_output(out: Option<&Path>, content: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => io::stdout().write_all(content.as_bytes()),
    }
}
