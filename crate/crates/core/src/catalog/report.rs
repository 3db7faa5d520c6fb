//! Report rows, the aggregated report and its text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use super::{CatalogError, Fixture, FixtureKind, TableCell};

/// Verdict of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The computation itself failed.
    Error,
    /// Informational: recorded, not judged.
    Info,
}

impl CheckStatus {
    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::Error => "ERROR",
            Self::Info => "INFO",
        }
    }

    /// True unless the check failed or errored.
    #[must_use]
    pub fn is_ok(self) -> bool {
        matches!(self, Self::Pass | Self::Info)
    }
}

/// Computed versus expected value of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub params: Value,
    pub expected: Value,
    pub computed: Value,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub anchor: String,
}

/// All outcomes for one fixture.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub id: String,
    pub kind: Option<FixtureKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<TableCell>,
    pub status: CheckStatus,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ReportRow {
    pub(crate) fn new(f: &Fixture, checks: Vec<CheckOutcome>, elapsed: Duration) -> Self {
        let status = if checks.iter().all(|c| c.status.is_ok()) { CheckStatus::Pass } else { CheckStatus::Fail };
        Self {
            id: f.id.clone(),
            kind: Some(f.kind),
            cell: f.cell,
            status,
            checks,
            elapsed_ms: Some(u64::try_from(elapsed.as_millis()).unwrap_or(u64::MAX)),
        }
    }

    pub(crate) fn parse_failure(name: &str, e: &CatalogError) -> Self {
        Self {
            id: name.to_string(),
            kind: None,
            cell: None,
            status: CheckStatus::Error,
            checks: vec![CheckOutcome {
                check: "parse".into(),
                params: Value::Null,
                expected: Value::Null,
                computed: Value::Null,
                status: CheckStatus::Error,
                message: Some(e.to_string()),
                anchor: String::new(),
            }],
            elapsed_ms: None,
        }
    }

    /// True iff every judged check passed.
    #[must_use]
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Outcome of a catalog run, rows sorted by id.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<ReportRow>,
    pub fixtures: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

impl VerificationReport {
    pub(crate) fn new(rows: Vec<ReportRow>, extra: Vec<ReportRow>) -> Self {
        let mut r = Self { rows, fixtures: 0, passed: 0, failed: 0, all_pass: true };
        r.add_rows(extra);
        r
    }

    pub(crate) fn add_rows(&mut self, extra: Vec<ReportRow>) {
        self.rows.extend(extra);
        self.rows.sort_by(|a, b| a.id.cmp(&b.id));
        self.fixtures = self.rows.len();
        self.passed = self.rows.iter().filter(|r| r.passed()).count();
        self.failed = self.fixtures - self.passed;
        self.all_pass = self.failed == 0;
    }

    /// Row by fixture id.
    #[must_use]
    pub fn row(&self, id: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    /// The report with wall times removed, for byte-level comparisons.
    #[must_use]
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for row in &mut r.rows {
            row.elapsed_ms = None;
        }
        r
    }

    /// Pretty JSON.
    #[must_use]
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering: a grid of table cells by embedding dimension
    /// `n` and colength `d`, then one line per fixture and per failed check.
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut cells: BTreeMap<TableCell, (usize, usize)> = BTreeMap::new();
        for row in &self.rows {
            if let Some(c) = row.cell {
                let e = cells.entry(c).or_default();
                e.0 += usize::from(row.passed());
                e.1 += 1;
            }
        }
        let mut out = String::new();
        let cols = [8, 9, 10];
        let _ = writeln!(out, "{:<8}| {:<14}| {:<14}| {:<14}", "", "d = 8", "d = 9", "d = 10");
        let _ = writeln!(out, "{}", "-".repeat(56));
        for (n, label) in [(4, "n = 4"), (5, "n = 5"), (6, "n >= 6")] {
            let _ = write!(out, "{label:<8}");
            for d in cols {
                let text = match cells.get(&TableCell { n, d }) {
                    Some((p, t)) => format!("{p}/{t} {}", if p == t { "PASS" } else { "FAIL" }),
                    None => "-".into(),
                };
                let _ = write!(out, "| {text:<14}");
            }
            let _ = writeln!(out);
        }
        let _ = writeln!(out);
        let width = self.rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
        for row in &self.rows {
            let judged = row.checks.iter().filter(|c| c.status != CheckStatus::Info).count();
            let ok = row.checks.iter().filter(|c| c.status == CheckStatus::Pass).count();
            let _ = writeln!(out, "{:<width$}  {}  {ok}/{judged} checks", row.id, row.status.label());
            for c in &row.checks {
                match c.status {
                    CheckStatus::Pass => {}
                    CheckStatus::Info => {
                        let _ = writeln!(out, "    info {}: {}", c.check, c.computed);
                    }
                    _ => {
                        let why = c.message.clone().unwrap_or_else(|| format!("computed {}", c.computed));
                        let _ = writeln!(out, "    {} {}: expected {}, {why}", c.status.label(), c.check, c.expected);
                    }
                }
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{} fixtures, {} passed, {} failed", self.fixtures, self.passed, self.failed);
        out
    }
}
