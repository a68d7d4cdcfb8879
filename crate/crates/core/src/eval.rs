//! Golden-corpus evaluation: runs each message end to end and compares the
//! service set with the expected one.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::assets;
use crate::text::RawMessage;
use crate::triage::{ServiceType, TriageEngine, TriageError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenRow {
    pub row: usize,
    pub expected: BTreeSet<ServiceType>,
    pub message: String,
}

/// Parses `row<TAB>Type,Type<TAB>message` lines; `#` lines are comments.
pub fn parse_golden(text: &str) -> Result<Vec<GoldenRow>, TriageError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: &str| TriageError::Config { line: n + 1, message: m.to_string() };
        let mut cols = line.splitn(3, '\t');
        let (Some(row), Some(services), Some(message)) = (cols.next(), cols.next(), cols.next()) else {
            return Err(err("expected three tab-separated columns"));
        };
        let row = row.trim().parse().map_err(|_| err("row is not a number"))?;
        let expected = services.split(',').map(str::parse).collect::<Result<_, _>>()?;
        out.push(GoldenRow { row, expected, message: message.to_string() });
    }
    Ok(out)
}

/// The shipped sixteen-row corpus.
pub fn table1() -> Vec<GoldenRow> {
    parse_golden(assets::TABLE1).expect("shipped corpus parses")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowOutcome {
    pub row: usize,
    pub expected: BTreeSet<ServiceType>,
    /// Service set, or the error text when triage failed.
    pub actual: Result<BTreeSet<ServiceType>, String>,
}

impl RowOutcome {
    pub fn passed(&self) -> bool {
        self.actual.as_ref().is_ok_and(|a| *a == self.expected)
    }
}

pub fn evaluate_rows(engine: &TriageEngine, rows: &[GoldenRow]) -> Vec<RowOutcome> {
    rows.iter()
        .map(|r| RowOutcome {
            row: r.row,
            expected: r.expected.clone(),
            actual: engine
                .triage(&RawMessage::with_id(format!("row-{}", r.row), r.message.clone()))
                .map(|t| t.service_types)
                .map_err(|e| e.to_string()),
        })
        .collect()
}

fn join(set: &BTreeSet<ServiceType>) -> String {
    set.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
}

/// One line per row plus a summary line.
pub fn render_matrix(outcomes: &[RowOutcome]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>3}  {:<4}  {:<32}  {}", "row", "ok", "expected", "actual");
    for o in outcomes {
        let actual = match &o.actual {
            Ok(a) => join(a),
            Err(e) => format!("error: {e}"),
        };
        let mark = if o.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{:>3}  {:<4}  {:<32}  {}", o.row, mark, join(&o.expected), actual);
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let _ = writeln!(out, "{passed}/{} rows match", outcomes.len());
    out
}
