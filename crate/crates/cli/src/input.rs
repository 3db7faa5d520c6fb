//! Reading polynomial lists, schemes and matrix tuples from the command line.

use std::fs;
use std::path::Path;

use artinian::apolarity::{apolar_algebra, InverseSystem};
use artinian::catalog::payload::{BuiltTuple, MatrixTuplePayload};
use artinian::exactalg::{parse_scalar, Scalar};
use artinian::ideals::FiniteIdeal;
use artinian::poly::{max_variable_index, parse_list, OperatorPolynomial, PolyError};
use serde_json::Value;

use crate::error::CliError;

/// Text of an input: the file when given, the inline string otherwise.
pub fn source(inline: Option<&str>, file: Option<&Path>) -> Result<String, CliError> {
    match (file, inline) {
        (Some(path), _) => read(path),
        (None, Some(text)) => Ok(text.to_string()),
        (None, None) => Err(CliError::Usage("an inline polynomial list or --file is required".into())),
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Number of variables: `--vars` when given, else the largest index used.
pub fn nvars(vars: Option<usize>, text: &str) -> usize {
    vars.unwrap_or_else(|| max_variable_index(text).max(1))
}

/// A polynomial list is an inverse system (`x` variables) or an ideal
/// (`a` variables).
pub enum Scheme {
    Inverse(InverseSystem),
    Ideal(Vec<OperatorPolynomial>),
}

impl Scheme {
    pub fn parse(text: &str, n: usize) -> Result<Self, CliError> {
        match InverseSystem::parse(text, n) {
            Ok(e) => Ok(Self::Inverse(e)),
            Err(artinian::apolarity::ApolarError::Poly(PolyError::WrongRole { expected: 'x', .. })) => {
                Ok(Self::Ideal(parse_list(text, n)?))
            }
            Err(e) => Err(e.into()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Inverse(_) => "inverse_system",
            Self::Ideal(_) => "ideal",
        }
    }

    pub fn ideal(&self, n: usize, cap: u32) -> Result<FiniteIdeal, CliError> {
        match self {
            Self::Inverse(e) => Ok(FiniteIdeal::from_algebra(apolar_algebra(e)?)),
            Self::Ideal(gens) => Ok(FiniteIdeal::new(n, gens.clone(), cap)?),
        }
    }

    pub fn inverse(&self) -> Result<&InverseSystem, CliError> {
        match self {
            Self::Inverse(e) => Ok(e),
            Self::Ideal(_) => Err(CliError::Usage("this command needs an inverse system in x1..xn".into())),
        }
    }
}

/// Comma-separated rationals.
pub fn scalars(text: &str) -> Result<Vec<Scalar>, CliError> {
    text.split(',').map(|s| parse_scalar(s).map_err(|e| CliError::Usage(e.to_string()))).collect()
}

/// Comma-separated integers.
pub fn integers(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Usage(format!("`{}` is not an integer", s.trim()))))
        .collect()
}

/// A matrix tuple file: a catalog fixture with a matrix payload, or the
/// payload itself (`{"n", "d", "matrices"}` or `{"n", "d", "recipe"}`).
pub fn tuple_file(path: &Path) -> Result<BuiltTuple, CliError> {
    let value: Value = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Usage(format!("{} is not valid JSON: {e}", path.display())))?;
    let payload = match value.get("payload") {
        Some(p) => p.clone(),
        None => value,
    };
    let payload: MatrixTuplePayload = serde_json::from_value(payload)
        .map_err(|e| CliError::Usage(format!("{} does not describe a matrix tuple: {e}", path.display())))?;
    Ok(payload.build()?)
}
