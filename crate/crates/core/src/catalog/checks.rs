//! Evaluation of named checks against a fixture's payload.
//!
//! Components, matrices and directions are numbered from 1 in parameters,
//! matching the variable names `a1..an` and matrices `A_1..A_n`.

use std::cell::OnceCell;

use serde_json::{json, Value};

use super::payload::{
    build_parts, BuiltScheme, BuiltTuple, MatrixTuplePayload, SchemePart, SchemePayload, TupleSource,
};
use super::report::{CheckOutcome, CheckStatus};
use super::{CatalogError, ExpectedCheck, Fixture, FixtureKind};
use crate::apolarity::{hilbert_function, minimal_generator_count, socle_type};
use crate::commuting::{
    check_commute, eigen_summary, hilb_tangent_dim, principal_component_dim, projected_tangent_dim, tangent_space_dim,
    CommutingTuple,
};
use crate::exactalg::{parse_scalar, Scalar};
use crate::ideals::{FiniteIdeal, LinearFamily, LinearFamilySpec, DEFAULT_TRUNCATION_CAP};
use crate::poly::essential_variable_count;
use crate::random::DEFAULT_SEED;
use crate::raydeg::{
    ray_decompose, ray_order, rayflat_predicted_fiber, to_standard_form, verify_flatness_by_colength, RayDecomposition,
    RayFamily, StandardForm, StandardFormSpec,
};

type CheckResult = Result<Value, CatalogError>;

// One context per fixture, so variant sizes do not matter.
#[allow(clippy::large_enum_variant)]
enum Context {
    Scheme(BuiltScheme),
    Tuple(BuiltTuple),
    Standard { sf: StandardForm, ideal: OnceCell<FiniteIdeal>, rd: OnceCell<RayDecomposition> },
    Family(LinearFamily),
}

/// Runs all checks of `f`, in order.
pub(super) fn run(f: &Fixture) -> Vec<CheckOutcome> {
    let ctx = Context::build(f);
    f.expected
        .iter()
        .map(|c| {
            let computed = match &ctx {
                Ok(ctx) => ctx.eval(&c.check, &c.params),
                Err(e) => Err(e.clone()),
            };
            outcome(c, computed)
        })
        .collect()
}

fn outcome(c: &ExpectedCheck, computed: CheckResult) -> CheckOutcome {
    let (computed, status, message) = match computed {
        Ok(v) if c.expected.is_null() => (v, CheckStatus::Info, None),
        Ok(v) if v == c.expected => (v, CheckStatus::Pass, None),
        Ok(v) => (v, CheckStatus::Fail, None),
        Err(e) => (Value::Null, CheckStatus::Error, Some(e.to_string())),
    };
    CheckOutcome {
        check: c.check.clone(),
        params: c.params.clone(),
        expected: c.expected.clone(),
        computed,
        status,
        message,
        anchor: c.anchor.clone(),
    }
}

fn decode<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T, CatalogError> {
    serde_json::from_value(v.clone()).map_err(|e| CatalogError::Payload(e.to_string()))
}

impl Context {
    fn build(f: &Fixture) -> Result<Self, CatalogError> {
        match f.kind {
            FixtureKind::InverseSystem | FixtureKind::Ideal => {
                Ok(Self::Scheme(decode::<SchemePayload>(&f.payload)?.build()?))
            }
            FixtureKind::MatrixTuple => Ok(Self::Tuple(decode::<MatrixTuplePayload>(&f.payload)?.build()?)),
            FixtureKind::StandardForm => Ok(Self::Standard {
                sf: StandardForm::from_spec(&decode::<StandardFormSpec>(&f.payload)?)?,
                ideal: OnceCell::new(),
                rd: OnceCell::new(),
            }),
            FixtureKind::Deformation => {
                Ok(Self::Family(LinearFamily::from_spec(&decode::<LinearFamilySpec>(&f.payload)?)?))
            }
        }
    }

    fn eval(&self, check: &str, p: &Value) -> CheckResult {
        match self {
            Self::Scheme(s) => scheme_check(s, check, p),
            Self::Tuple(t) => tuple_check(t, check, p),
            Self::Standard { sf, ideal, rd } => standard_check(sf, ideal, rd, check, p),
            Self::Family(fam) => family_check(fam, check, p),
        }
    }
}

// parameter access

fn opt_usize(p: &Value, key: &str) -> Result<Option<usize>, CatalogError> {
    match p.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .and_then(|x| usize::try_from(x).ok())
            .map(Some)
            .ok_or_else(|| CatalogError::Params(format!("`{key}` must be a nonnegative integer"))),
    }
}

fn req_usize(p: &Value, key: &str) -> Result<usize, CatalogError> {
    opt_usize(p, key)?.ok_or_else(|| CatalogError::Params(format!("missing `{key}`")))
}

/// 1-based index parameter converted to 0-based.
fn index(p: &Value, key: &str, default: Option<usize>, len: usize) -> Result<usize, CatalogError> {
    let k = match opt_usize(p, key)? {
        Some(k) => k,
        None => default.ok_or_else(|| CatalogError::Params(format!("missing `{key}`")))?,
    };
    if k == 0 || k > len {
        return Err(CatalogError::Params(format!("`{key}` = {k} is outside 1..={len}")));
    }
    Ok(k - 1)
}

fn scalar(v: &Value) -> Result<Scalar, CatalogError> {
    match v {
        Value::String(s) => Ok(parse_scalar(s)?),
        Value::Number(n) => Ok(parse_scalar(&n.to_string())?),
        _ => Err(CatalogError::Params(format!("expected a rational, found {v}"))),
    }
}

fn opt_scalar(p: &Value, key: &str) -> Result<Option<Scalar>, CatalogError> {
    match p.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => scalar(v).map(Some),
    }
}

fn scalars(p: &Value, key: &str) -> Result<Vec<Scalar>, CatalogError> {
    match p.get(key) {
        Some(Value::Array(vs)) => vs.iter().map(scalar).collect(),
        _ => Err(CatalogError::Params(format!("`{key}` must be a list of rationals"))),
    }
}

fn weight(p: &Value) -> Result<Vec<i64>, CatalogError> {
    p.get("weight").map_or_else(|| Err(CatalogError::Params("missing `weight`".into())), decode)
}

fn other_ideal(p: &Value, n: usize) -> Result<FiniteIdeal, CatalogError> {
    let parts: Vec<SchemePart> =
        p.get("components").map_or_else(|| Err(CatalogError::Params("missing `components`".into())), decode)?;
    Ok(build_parts(n, &parts, DEFAULT_TRUNCATION_CAP)?.ideal)
}

fn local_tuple(ideal: &FiniteIdeal) -> Result<CommutingTuple, CatalogError> {
    if !ideal.is_local() {
        return Err(crate::ideals::IdealError::NotLocal.into());
    }
    Ok(CommutingTuple::new(ideal.algebra().matrices())?)
}

fn algebra_tuple(ideal: &FiniteIdeal) -> Result<CommutingTuple, CatalogError> {
    Ok(CommutingTuple::new(ideal.algebra().matrices())?)
}

// inverse systems and ideals

fn scheme_check(s: &BuiltScheme, check: &str, p: &Value) -> CheckResult {
    let n = s.ideal.nvars();
    let part = |default: Option<usize>| -> Result<Option<&super::payload::BuiltPart>, CatalogError> {
        match opt_usize(p, "component")?.or(default) {
            Some(_) => Ok(Some(&s.parts[index(p, "component", default, s.parts.len())?])),
            None => Ok(None),
        }
    };
    let target = |default: Option<usize>| -> Result<&FiniteIdeal, CatalogError> {
        Ok(part(default)?.map_or(&s.ideal, |b| &b.ideal))
    };
    let inverse = || -> Result<&crate::apolarity::InverseSystem, CatalogError> {
        part(Some(1))?
            .and_then(|b| b.inverse_system.as_ref())
            .ok_or_else(|| CatalogError::Params("the component is not an inverse system".into()))
    };
    match check {
        "colength" => Ok(json!(target(None)?.colength())),
        "is_local" => Ok(json!(target(None)?.is_local())),
        "hilbert_function" => match part(None)? {
            Some(b) => match &b.inverse_system {
                Some(e) => Ok(json!(hilbert_function(e).to_string())),
                None => Ok(json!(b.ideal.local_hilbert_function()?.to_string())),
            },
            None => Ok(json!(s.ideal.local_hilbert_function()?.to_string())),
        },
        "socle_dim" => Ok(json!(local_tuple(target(None)?)?.socle_dim())),
        "socle_type" => {
            let t = socle_type(inverse()?)?;
            Ok(json!(t))
        }
        "hilb_tangent_dim" => Ok(json!(hilb_tangent_dim(&algebra_tuple(target(None)?)?)?)),
        "equals" => Ok(json!(target(None)?.equals(&other_ideal(p, n)?)?)),
        "contains" => Ok(json!(target(None)?.contains_ideal(&other_ideal(p, n)?)?)),
        "initial_ideal_equals" => {
            let init = target(None)?.initial_ideal(&weight(p)?)?;
            Ok(json!(init.equals(&other_ideal(p, n)?)?))
        }
        "initial_ideal_hilbert_function" => {
            Ok(json!(target(None)?.initial_ideal(&weight(p)?)?.local_hilbert_function()?.to_string()))
        }
        "minimal_generators" => {
            let k =
                u32::try_from(req_usize(p, "degree")?).map_err(|_| CatalogError::Params("degree too large".into()))?;
            Ok(json!(minimal_generator_count(inverse()?, k)?))
        }
        "essential_variables" => {
            let e = inverse()?;
            match e.generators() {
                [f] => Ok(json!(essential_variable_count(f)?)),
                _ => Err(CatalogError::Params("essential variables need a single generator".into())),
            }
        }
        "ray_order" => {
            let dir = index(p, "direction", Some(1), n)?;
            Ok(json!(ray_order(target(None)?, dir)?))
        }
        "ray_flatness" => {
            let dir = index(p, "direction", Some(1), n)?;
            let rd = ray_decompose(target(None)?, dir)?;
            let report = verify_flatness_by_colength(&rd, &crate::raydeg::default_samples(), RayFamily::Upper);
            Ok(json!(report.pass))
        }
        _ => Err(CatalogError::UnknownCheck(check.into())),
    }
}

// matrix tuples

fn tuple_check(t: &BuiltTuple, check: &str, p: &Value) -> CheckResult {
    let lambda = opt_scalar(p, "lambda")?.unwrap_or_default();
    let deform = opt_scalar(p, "deform")?;
    let restrict = p.get("restrict_to").and_then(Value::as_str).map(|name| t.shape(name)).transpose()?;
    let tuple = || -> Result<CommutingTuple, CatalogError> {
        match &restrict {
            Some(sh) => Ok(CommutingTuple::new(sh.mask(&t.matrices(&lambda, deform.as_ref())?))?),
            None => t.tuple(&lambda, deform.as_ref()),
        }
    };
    let matrix = || -> Result<crate::exactalg::Matrix, CatalogError> {
        let i = index(p, "matrix", Some(1), t.n)?;
        Ok(tuple()?.matrix(i).clone())
    };
    let shape = |key: &str| -> Result<Option<crate::commuting::ShapeConstraint>, CatalogError> {
        match p.get(key).and_then(Value::as_str) {
            Some(name) => t.shape(name).map(Some),
            None => Ok(None),
        }
    };
    match check {
        "commute" => {
            let ms = t.matrices(&lambda, None)?;
            if let Some(x) = &deform {
                return Ok(json!(CommutingTuple::new(ms)?.deformation_path(&t.deformation, x, DEFAULT_SEED).is_ok()));
            }
            Ok(json!(check_commute(&ms)?.is_none()))
        }
        "limit_exists" => Ok(json!(match &t.source {
            TupleSource::Explicit(_) => true,
            TupleSource::Recipe(ls) => ls.iter().all(super::recipe::LaurentMatrix::is_polynomial),
        })),
        "tangent_dim" => Ok(json!(tangent_space_dim(&tuple()?, shape("shape")?.as_ref())?)),
        "projected_tangent_dim" => {
            let onto = shape("onto")?.ok_or_else(|| CatalogError::Params("missing `onto`".into()))?;
            Ok(json!(projected_tangent_dim(&tuple()?, shape("shape")?.as_ref(), &onto)?))
        }
        "fits_shape" => {
            let sh = shape("shape")?.ok_or_else(|| CatalogError::Params("missing `shape`".into()))?;
            Ok(json!(sh.admits(tuple()?.matrices())))
        }
        "principal_component_dim" => Ok(json!(principal_component_dim(t.d, t.n))),
        "hilb_tangent_dim" => Ok(json!(hilb_tangent_dim(&tuple()?)?)),
        "kernel_profile" => Ok(json!(tuple()?.kernel_profile()?.to_string())),
        "socle_dim" => Ok(json!(tuple()?.socle_dim())),
        "cyclic" => Ok(json!(tuple()?.find_cyclic_vector(DEFAULT_SEED).is_some())),
        "nilpotent" => Ok(json!(tuple()?.require_nilpotent().is_ok())),
        "distinct_eigenvalues" => Ok(json!(eigen_summary(&matrix()?, &[])?.distinct_eigenvalues)),
        "squarefree_char_poly" => Ok(json!(eigen_summary(&matrix()?, &[])?.squarefree)),
        "power_kernel_dim" => {
            let k =
                u32::try_from(req_usize(p, "power")?).map_err(|_| CatalogError::Params("power too large".into()))?;
            Ok(json!(matrix()?.power_kernel_dim(k)?))
        }
        _ => Err(CatalogError::UnknownCheck(check.into())),
    }
}

// standard forms

fn standard_check(
    sf: &StandardForm,
    ideal: &OnceCell<FiniteIdeal>,
    rd: &OnceCell<RayDecomposition>,
    check: &str,
    p: &Value,
) -> CheckResult {
    let get_ideal = || -> Result<&FiniteIdeal, CatalogError> {
        if ideal.get().is_none() {
            let _ = ideal.set(sf.ideal()?);
        }
        Ok(ideal.get().expect("just set"))
    };
    let get_rd = || -> Result<&RayDecomposition, CatalogError> {
        if rd.get().is_none() {
            let _ = rd.set(ray_decompose(get_ideal()?, 0)?);
        }
        Ok(rd.get().expect("just set"))
    };
    match check {
        "hilbert_function" => Ok(json!(sf.hilbert_function().to_string())),
        "colength" => Ok(json!(get_ideal()?.colength())),
        "socle_dim" => Ok(json!(local_tuple(get_ideal()?)?.socle_dim())),
        "ray_order" => Ok(json!(ray_order(get_ideal()?, 0)?)),
        "ray_order_in_range" => {
            let nu = ray_order(get_ideal()?, 0)?;
            Ok(json!(sf.c() < nu && nu <= sf.s()))
        }
        "fiber_identity" => {
            let rd = get_rd()?;
            for l in scalars(p, "lambdas")? {
                if !rd.upper_ray_fiber(&l)?.equals(&rayflat_predicted_fiber(sf, &l)?)? {
                    return Ok(json!(false));
                }
            }
            Ok(json!(true))
        }
        "fiber_colengths" | "lower_fiber_colengths" => {
            let rd = get_rd()?;
            let out = scalars(p, "samples")?
                .iter()
                .map(|l| {
                    let f = if check == "fiber_colengths" { rd.upper_ray_fiber(l) } else { rd.lower_ray_fiber(l) };
                    Ok(f?.colength())
                })
                .collect::<Result<Vec<usize>, CatalogError>>()?;
            Ok(json!(out))
        }
        "shifted_hilbert_function" => {
            let l = opt_scalar(p, "lambda")?.ok_or_else(|| CatalogError::Params("missing `lambda`".into()))?;
            Ok(json!(hilbert_function(&sf.shifted_inverse_system(&l)?).to_string()))
        }
        "recovered_shape" => {
            let (found, _) = to_standard_form(&sf.inverse_system())?;
            Ok(json!([found.s(), found.c()]))
        }
        _ => Err(CatalogError::UnknownCheck(check.into())),
    }
}

// parametrized families

fn family_check(fam: &LinearFamily, check: &str, p: &Value) -> CheckResult {
    match check {
        "parameter_count" => Ok(json!(fam.parameter_count())),
        "base_colength" => Ok(json!(fam.base_ideal()?.colength())),
        "base_hilbert_function" => Ok(json!(fam.base_ideal()?.local_hilbert_function()?.to_string())),
        "base_equals" => {
            let base = fam.base_ideal()?;
            Ok(json!(base.equals(&other_ideal(p, base.nvars())?)?))
        }
        "first_order_constraint_rank" => Ok(json!(fam.first_order_constraint_rank()?)),
        "member_colength" => Ok(json!(fam.member(&scalars(p, "params")?)?.colength())),
        _ => Err(CatalogError::UnknownCheck(check.into())),
    }
}
