//! Fixture catalog: explicit ideals, inverse systems, matrix tuples,
//! standard forms and parametrized families, each with expected values, and
//! a runner that recomputes every value and reports PASS or FAIL.
//!
//! Fixtures are JSON documents. The shipped set is embedded at compile time;
//! [`load_fixture`] reads further ones from disk.

mod checks;
mod embedded;
pub mod payload;
pub mod recipe;
mod report;

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::apolarity::ApolarError;
use crate::commuting::CommutingError;
use crate::exactalg::LinalgError;
use crate::ideals::IdealError;
use crate::poly::PolyError;
use crate::raydeg::RayError;

pub use report::{CheckStatus, ReportRow, VerificationReport};

/// Failures while building or checking a fixture.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("fixture parse error: {0}")]
    Parse(String),
    #[error("invalid payload: {0}")]
    Payload(String),
    #[error("unknown check `{0}` for this fixture kind")]
    UnknownCheck(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("recipe has no limit at 0: the power λ^{0} survives")]
    NoLimit(i32),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Apolar(#[from] ApolarError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Commuting(#[from] CommutingError),
    #[error(transparent)]
    Ray(#[from] RayError),
}

/// What a fixture's payload describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureKind {
    InverseSystem,
    Ideal,
    MatrixTuple,
    StandardForm,
    Deformation,
}

/// Cell `(n, d)` of the table of components the fixture stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableCell {
    pub n: usize,
    pub d: usize,
}

/// A named check with its expected value. `expected: null` marks an
/// informational check whose value is recorded but not judged.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectedCheck {
    pub check: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub params: Value,
    #[serde(default)]
    pub expected: Value,
    /// The mathematical claim the value certifies.
    pub anchor: String,
}

/// One catalog entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub kind: FixtureKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell: Option<TableCell>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub payload: Value,
    pub expected: Vec<ExpectedCheck>,
}

impl Fixture {
    /// Parses one fixture document and checks that it carries at least one
    /// anchored expectation.
    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let f: Self = serde_json::from_str(text).map_err(|e| CatalogError::Parse(e.to_string()))?;
        if !f.expected.iter().any(|c| !c.expected.is_null() && !c.anchor.trim().is_empty()) {
            return Err(CatalogError::Parse(format!("fixture `{}` has no anchored expectation", f.id)));
        }
        Ok(f)
    }
}

/// Reads a fixture from a JSON file.
pub fn load_fixture(path: &Path) -> Result<Fixture, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Parse(format!("{}: {e}", path.display())))?;
    Fixture::from_json(&text)
}

/// The shipped fixtures, sorted by id. Parse failures are returned as errors
/// tagged with the file name.
#[must_use]
pub fn embedded_fixtures() -> Vec<Result<Fixture, (String, CatalogError)>> {
    let mut out: Vec<_> = embedded::FILES
        .iter()
        .map(|(name, text)| Fixture::from_json(text).map_err(|e| ((*name).to_string(), e)))
        .collect();
    out.sort_by(|a, b| key(a).cmp(key(b)));
    out
}

fn key(r: &Result<Fixture, (String, CatalogError)>) -> &str {
    match r {
        Ok(f) => &f.id,
        Err((name, _)) => name,
    }
}

/// Raw text of a shipped fixture file, by file name.
#[must_use]
pub fn embedded_source(name: &str) -> Option<&'static str> {
    embedded::FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Runs every check of `f`.
#[must_use]
pub fn run_fixture(f: &Fixture) -> ReportRow {
    let start = Instant::now();
    let outcomes = checks::run(f);
    ReportRow::new(f, outcomes, start.elapsed())
}

/// Runs the given fixtures in parallel; rows are ordered by id.
#[must_use]
pub fn run_fixtures(fixtures: &[Fixture]) -> VerificationReport {
    let mut rows: Vec<ReportRow> = fixtures.par_iter().map(run_fixture).collect();
    rows.sort_by(|a, b| a.id.cmp(&b.id));
    VerificationReport::new(rows, Vec::new())
}

/// Runs the shipped catalog. Fixtures that fail to parse become failed rows.
#[must_use]
pub fn run_all() -> VerificationReport {
    let mut good = Vec::new();
    let mut broken = Vec::new();
    for r in embedded_fixtures() {
        match r {
            Ok(f) => good.push(f),
            Err((name, e)) => broken.push(ReportRow::parse_failure(&name, &e)),
        }
    }
    let mut report = run_fixtures(&good);
    report.add_rows(broken);
    report
}
