//! Error classes and their exit codes.

use artinian::apolarity::ApolarError;
use artinian::poly::PolyError;
use serde_json::json;

/// Usage errors exit with 2, domain errors with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain { kind: &'static str, message: String },
}

impl CliError {
    #[must_use]
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Domain { .. } => 1,
        }
    }

    #[must_use]
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Self::Usage(message) => json!({ "error": { "kind": "usage", "message": message } }),
            Self::Domain { kind, message } => json!({ "error": { "kind": kind, "message": message } }),
        }
    }

    #[must_use]
    pub fn message(&self) -> String {
        match self {
            Self::Usage(m) => format!("usage error: {m}"),
            Self::Domain { kind, message } => format!("{kind} error: {message}"),
        }
    }
}

macro_rules! domain {
    ($($ty:ty => $kind:literal),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                Self::Domain { kind: $kind, message: e.to_string() }
            }
        })*
    };
}

domain! {
    artinian::exactalg::LinalgError => "linalg",
    artinian::ideals::IdealError => "ideal",
    artinian::commuting::CommutingError => "commuting",
    artinian::raydeg::RayError => "ray",
    artinian::catalog::CatalogError => "catalog",
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Parse { .. } | PolyError::WrongRole { .. } | PolyError::VariableOutOfRange { .. } => {
                Self::Usage(e.to_string())
            }
            _ => Self::Domain { kind: "poly", message: e.to_string() },
        }
    }
}

impl From<ApolarError> for CliError {
    fn from(e: ApolarError) -> Self {
        match e {
            ApolarError::Poly(p) => p.into(),
            _ => Self::Domain { kind: "apolar", message: e.to_string() },
        }
    }
}
