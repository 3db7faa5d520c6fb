//! Fixture payloads and the objects they describe.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::recipe::{LaurentMatrix, Recipe};
use super::CatalogError;
use crate::apolarity::{apolar_algebra, InverseSystem};
use crate::commuting::{CommutingTuple, ShapeConstraint};
use crate::exactalg::{parse_scalar, Matrix, Scalar};
use crate::ideals::{FiniteIdeal, IdealSpec, DEFAULT_TRUNCATION_CAP};

/// One scheme in an intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SchemePart {
    /// `Ann` of dual generators (variables `x1..xn`).
    InverseSystem { generators: Vec<String> },
    /// Operator generators (variables `a1..an`).
    Ideal {
        generators: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        add_power_of_max_ideal: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        support_shift: Option<Vec<String>>,
    },
    /// The reduced point with the given coordinates.
    Point { coords: Vec<String> },
}

/// Intersection of the listed schemes in `vars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemePayload {
    pub vars: usize,
    pub components: Vec<SchemePart>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_cap: Option<u32>,
}

/// A built component: its ideal, plus the inverse system when given as one.
#[derive(Clone, Debug)]
pub struct BuiltPart {
    pub inverse_system: Option<InverseSystem>,
    pub ideal: FiniteIdeal,
}

/// A built scheme: every component and their intersection.
#[derive(Clone, Debug)]
pub struct BuiltScheme {
    pub parts: Vec<BuiltPart>,
    pub ideal: FiniteIdeal,
}

impl SchemePart {
    /// Builds the component in `n` variables.
    pub fn build(&self, n: usize, cap: u32) -> Result<BuiltPart, CatalogError> {
        match self {
            Self::InverseSystem { generators } => {
                let e = InverseSystem::parse(&generators.join(", "), n)?;
                let ideal = FiniteIdeal::from_algebra(apolar_algebra(&e)?);
                Ok(BuiltPart { inverse_system: Some(e), ideal })
            }
            Self::Ideal { generators, add_power_of_max_ideal, support_shift } => {
                let spec = IdealSpec {
                    vars: n,
                    generators: generators.clone(),
                    add_power_of_max_ideal: *add_power_of_max_ideal,
                    support_shift: support_shift.clone(),
                };
                Ok(BuiltPart { inverse_system: None, ideal: FiniteIdeal::from_spec(&spec, cap)? })
            }
            Self::Point { coords } => {
                let p = parse_scalars(coords)?;
                if p.len() != n {
                    return Err(CatalogError::Payload(format!("point has {} coordinates, expected {n}", p.len())));
                }
                Ok(BuiltPart { inverse_system: None, ideal: FiniteIdeal::point(&p) })
            }
        }
    }
}

impl SchemePayload {
    /// Builds all components and intersects them.
    pub fn build(&self) -> Result<BuiltScheme, CatalogError> {
        build_parts(self.vars, &self.components, self.truncation_cap.unwrap_or(DEFAULT_TRUNCATION_CAP))
    }
}

/// Builds and intersects `parts` in `n` variables.
pub fn build_parts(n: usize, parts: &[SchemePart], cap: u32) -> Result<BuiltScheme, CatalogError> {
    let parts = parts.iter().map(|p| p.build(n, cap)).collect::<Result<Vec<_>, _>>()?;
    let mut it = parts.iter();
    let first = it.next().ok_or_else(|| CatalogError::Payload("no components".into()))?;
    let mut ideal = first.ideal.clone();
    for p in it {
        ideal = ideal.intersect(&p.ideal)?;
    }
    Ok(BuiltScheme { parts, ideal })
}

/// Block shape: sizes of the diagonal blocks and the free `(row, col)` blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeSpec {
    pub blocks: Vec<usize>,
    pub free: Vec<[usize; 2]>,
}

impl ShapeSpec {
    /// The same block pattern for each of `n` matrices.
    #[must_use]
    pub fn constraint(&self, n: usize) -> ShapeConstraint {
        let free: Vec<(usize, usize)> = self.free.iter().map(|[r, c]| (*r, *c)).collect();
        let d = self.blocks.iter().sum();
        ShapeConstraint::uniform(n, d, ShapeConstraint::from_blocks(&self.blocks, &free))
    }
}

/// A commuting tuple given explicitly or by a recipe, with an optional
/// deformation direction and named shapes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixTuplePayload {
    pub n: usize,
    pub d: usize,
    /// Row-major entries, one list per matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<Recipe>,
    /// Directions `X_i` of the deformation `A_i + t X_i`; missing ones are zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub shapes: BTreeMap<String, ShapeSpec>,
}

/// Matrix data ready for evaluation.
#[derive(Clone, Debug)]
pub enum TupleSource {
    Explicit(Vec<Matrix>),
    Recipe(Vec<LaurentMatrix>),
}

/// Parsed [`MatrixTuplePayload`].
#[derive(Clone, Debug)]
pub struct BuiltTuple {
    pub n: usize,
    pub d: usize,
    pub source: TupleSource,
    pub deformation: Vec<Matrix>,
    pub shapes: BTreeMap<String, ShapeSpec>,
}

impl MatrixTuplePayload {
    /// Parses matrices and expands the recipe.
    pub fn build(&self) -> Result<BuiltTuple, CatalogError> {
        let (n, d) = (self.n, self.d);
        let source = match (&self.matrices, &self.recipe) {
            (Some(ms), None) => TupleSource::Explicit(parse_matrices(ms, d)?),
            (None, Some(r)) => TupleSource::Recipe(r.expand(d)?),
            _ => return Err(CatalogError::Payload("exactly one of `matrices` and `recipe` is required".into())),
        };
        let count = match &source {
            TupleSource::Explicit(ms) => ms.len(),
            TupleSource::Recipe(ls) => ls.len(),
        };
        if count != n {
            return Err(CatalogError::Payload(format!("{count} matrices given, expected {n}")));
        }
        let deformation = match &self.deformation {
            Some(xs) => parse_matrices(xs, d)?,
            None => Vec::new(),
        };
        Ok(BuiltTuple { n, d, source, deformation, shapes: self.shapes.clone() })
    }
}

impl BuiltTuple {
    /// The matrices at `λ` (ignored for explicit tuples), moved along the
    /// deformation by `t` when given.
    pub fn matrices(&self, lambda: &Scalar, t: Option<&Scalar>) -> Result<Vec<Matrix>, CatalogError> {
        let mut ms = match &self.source {
            TupleSource::Explicit(ms) => ms.clone(),
            TupleSource::Recipe(ls) => ls.iter().map(|l| l.at(lambda)).collect::<Result<_, _>>()?,
        };
        if let Some(t) = t {
            for (m, x) in ms.iter_mut().zip(&self.deformation) {
                *m = &*m + &x.scale(t);
            }
        }
        Ok(ms)
    }

    /// The commuting tuple at `λ`, deformed by `t` when given.
    pub fn tuple(&self, lambda: &Scalar, t: Option<&Scalar>) -> Result<CommutingTuple, CatalogError> {
        self.tuple_with_seed(lambda, t, crate::random::DEFAULT_SEED)
    }

    /// As [`Self::tuple`], with an explicit seed for the deformation probes.
    pub fn tuple_with_seed(
        &self,
        lambda: &Scalar,
        t: Option<&Scalar>,
        seed: u64,
    ) -> Result<CommutingTuple, CatalogError> {
        let base = CommutingTuple::new(self.matrices(lambda, None)?)?;
        match t {
            Some(t) => Ok(base.deformation_path(&self.deformation, t, seed)?),
            None => Ok(base),
        }
    }

    /// Named shape constraint.
    pub fn shape(&self, name: &str) -> Result<ShapeConstraint, CatalogError> {
        self.shapes
            .get(name)
            .map(|s| s.constraint(self.n))
            .ok_or_else(|| CatalogError::Payload(format!("unknown shape `{name}`")))
    }
}

fn parse_matrices(ms: &[Vec<String>], d: usize) -> Result<Vec<Matrix>, CatalogError> {
    ms.iter().map(|m| Ok(Matrix::from_row_major(d, d, parse_scalars(m)?)?)).collect()
}

/// Parses rational strings.
pub fn parse_scalars(v: &[String]) -> Result<Vec<Scalar>, CatalogError> {
    Ok(v.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>()?)
}
