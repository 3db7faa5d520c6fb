//! One function per subcommand, each producing text and JSON output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use artinian::apolarity::{apolar_algebra, apolar_ideal_piece, hilbert_function, minimal_generator_count, socle_type};
use artinian::catalog::payload::SchemePayload;
use artinian::catalog::{load_fixture, run_all, run_fixtures};
use artinian::commuting::{hilb_tangent_dim, principal_component_dim, tangent_space_dim, CommutingTuple};
use artinian::exactalg::{format_scalar, parse_scalar, Scalar};
use artinian::ideals::FiniteIdeal;
use artinian::profile::GradedProfile;
use artinian::raydeg::{default_samples, ray_decompose, verify_flatness_by_colength, FlatnessReport, RayFamily};
use num_traits::Zero;
use serde::Serialize;

use crate::error::CliError;
use crate::input::{self, Scheme};
use crate::{Output, PolyInput, Settings, TupleInput};
use artinian_cli::schema::{
    AlgebraOutput, ApolarOutput, ApolarPiece, HfOutput, IdealOutput, RayFiber, RayOutput, RaySample, SocleOutput,
    StableOutput, TangentOutput,
};

fn output<T: Serialize>(text: String, value: &T) -> Output {
    Output { text, json: serde_json::to_value(value).expect("serializable"), success: true }
}

fn scheme(s: &Settings, i: &PolyInput) -> Result<(Scheme, usize), CliError> {
    let text = input::source(i.polys.as_deref(), i.file.as_deref())?;
    let n = input::nvars(s.vars, &text);
    Ok((Scheme::parse(&text, n)?, n))
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn local_hf(ideal: &FiniteIdeal) -> Result<Option<GradedProfile>, CliError> {
    if ideal.is_local() {
        Ok(Some(ideal.local_hilbert_function()?))
    } else {
        Ok(None)
    }
}

fn ideal_output(ideal: &FiniteIdeal, components: Vec<usize>) -> Result<(String, IdealOutput), CliError> {
    let hf = local_hf(ideal)?;
    let out = IdealOutput {
        vars: ideal.nvars(),
        colength: ideal.colength(),
        local: hf.is_some(),
        hilbert_function: hf.as_ref().map(|h| h.values().to_vec()),
        generators: strings(&ideal.border_generators()),
        components,
    };
    let mut text = format!("colength {}\n", out.colength);
    match &hf {
        Some(h) => writeln!(text, "local, Hilbert function {h}").unwrap(),
        None => text.push_str("not supported at the origin only\n"),
    }
    if !out.components.is_empty() {
        writeln!(text, "component colengths {:?}", out.components).unwrap();
    }
    text.push_str("generators:\n");
    for g in &out.generators {
        writeln!(text, "  {g}").unwrap();
    }
    Ok((text, out))
}

pub fn hf(s: &Settings, i: &PolyInput) -> Result<Output, CliError> {
    let (scheme, n) = scheme(s, i)?;
    let h = match &scheme {
        Scheme::Inverse(e) => hilbert_function(e),
        Scheme::Ideal(_) => scheme.ideal(n, s.cap)?.local_hilbert_function()?,
    };
    let out =
        HfOutput { kind: scheme.kind().into(), vars: n, hilbert_function: h.values().to_vec(), colength: h.total() };
    Ok(output(format!("{h}\n"), &out))
}

pub fn apolar(s: &Settings, i: &PolyInput, degree: Option<u32>) -> Result<Output, CliError> {
    let (scheme, n) = scheme(s, i)?;
    let e = scheme.inverse()?;
    let ideal = FiniteIdeal::from_algebra(apolar_algebra(e)?);
    let degrees: Vec<u32> = match degree {
        Some(k) => vec![k],
        None => (1..=e.max_degree() + 1).collect(),
    };
    let mut pieces = Vec::new();
    for k in degrees {
        let piece = apolar_ideal_piece(e, k)?;
        pieces.push(ApolarPiece {
            degree: k,
            dim: piece.dim(),
            minimal_generators: minimal_generator_count(e, k)?,
            basis: strings(&piece.basis()),
        });
    }
    let out =
        ApolarOutput { vars: n, colength: ideal.colength(), pieces, generators: strings(&ideal.border_generators()) };
    let mut text = format!("colength {}\n", out.colength);
    for p in &out.pieces {
        writeln!(text, "degree {}: dim {}, {} minimal generators", p.degree, p.dim, p.minimal_generators).unwrap();
        for b in &p.basis {
            writeln!(text, "  {b}").unwrap();
        }
    }
    Ok(output(text, &out))
}

pub fn socle(s: &Settings, i: &PolyInput) -> Result<Output, CliError> {
    let (scheme, n) = scheme(s, i)?;
    let by_degree = match &scheme {
        Scheme::Inverse(e) if e.is_homogeneous() => Some(socle_type(e)?),
        _ => None,
    };
    let dimension = match &by_degree {
        Some(t) => t.values().sum(),
        None => {
            let ideal = scheme.ideal(n, s.cap)?;
            if !ideal.is_local() {
                return Err(artinian::ideals::IdealError::NotLocal.into());
            }
            CommutingTuple::new(ideal.algebra().matrices())?.socle_dim()
        }
    };
    let mut text = format!("{dimension}\n");
    for (k, m) in by_degree.iter().flatten() {
        writeln!(text, "degree {k}: {m}").unwrap();
    }
    Ok(output(text, &SocleOutput { vars: n, dimension, by_degree }))
}

pub fn algebra(s: &Settings, i: &PolyInput) -> Result<Output, CliError> {
    let (scheme, n) = scheme(s, i)?;
    let ideal = scheme.ideal(n, s.cap)?;
    let hf = local_hf(&ideal)?;
    let out = AlgebraOutput {
        kind: scheme.kind().into(),
        vars: n,
        colength: ideal.colength(),
        local: hf.is_some(),
        hilbert_function: hf.as_ref().map(|h| h.values().to_vec()),
        standard_monomials: ideal.standard_monomials().iter().map(|m| m.render('a')).collect(),
        generators: strings(&ideal.border_generators()),
        matrices: ideal.algebra().matrices().iter().map(artinian::exactalg::Matrix::to_strings).collect(),
    };
    let mut text = format!("colength {}\n", out.colength);
    match &hf {
        Some(h) => writeln!(text, "local, Hilbert function {h}").unwrap(),
        None => text.push_str("not supported at the origin only\n"),
    }
    writeln!(text, "standard monomials: {}", out.standard_monomials.join(", ")).unwrap();
    text.push_str("generators:\n");
    for g in &out.generators {
        writeln!(text, "  {g}").unwrap();
    }
    Ok(output(text, &out))
}

fn scalar(text: Option<&str>) -> Result<Option<Scalar>, CliError> {
    text.map(|t| parse_scalar(t).map_err(|e| CliError::Usage(e.to_string()))).transpose()
}

/// The tuple of a file, or the multiplication tuple of a polynomial list.
fn tuple(
    s: &Settings,
    i: &TupleInput,
) -> Result<(CommutingTuple, Option<artinian::catalog::payload::BuiltTuple>), CliError> {
    match &i.tuple {
        Some(path) => {
            let built = input::tuple_file(path)?;
            let lambda = scalar(i.lambda.as_deref())?.unwrap_or_else(Scalar::zero);
            let t = scalar(i.deform.as_deref())?;
            Ok((built.tuple_with_seed(&lambda, t.as_ref(), s.seed)?, Some(built)))
        }
        None => {
            if i.lambda.is_some() || i.deform.is_some() {
                return Err(CliError::Usage("--lambda and --deform need --tuple".into()));
            }
            let (scheme, n) = scheme(s, &i.polys)?;
            let ideal = scheme.ideal(n, s.cap)?;
            Ok((CommutingTuple::new(ideal.algebra().matrices())?, None))
        }
    }
}

pub fn tangent(s: &Settings, i: &TupleInput, shape: Option<&str>) -> Result<Output, CliError> {
    let (t, built) = tuple(s, i)?;
    let constraint = match (shape, &built) {
        (Some(name), Some(b)) => Some(b.shape(name)?),
        (Some(_), None) => return Err(CliError::Usage("--shape needs --tuple".into())),
        (None, _) => None,
    };
    let dim = tangent_space_dim(&t, constraint.as_ref())?;
    let out = TangentOutput {
        n: t.n(),
        d: t.d(),
        shape: shape.map(String::from),
        tangent_dim: dim,
        principal_component_dim: principal_component_dim(t.d(), t.n()),
        hilb_tangent_dim: if constraint.is_none() { hilb_tangent_dim(&t).ok() } else { None },
    };
    Ok(output(format!("{dim}\n"), &out))
}

pub fn stable(s: &Settings, i: &TupleInput, vector: Option<&str>) -> Result<Output, CliError> {
    let (t, _) = tuple(s, i)?;
    let (stable, v) = match vector {
        Some(text) => {
            let v = input::scalars(text)?;
            if v.len() != t.d() {
                return Err(CliError::Usage(format!("vector has {} entries, expected {}", v.len(), t.d())));
            }
            (t.is_stable(&v)?, Some(v))
        }
        None => match t.find_cyclic_vector(s.seed) {
            Some(v) => (true, Some(v)),
            None => (false, None),
        },
    };
    let v = v.map(|v| v.iter().map(format_scalar).collect::<Vec<_>>());
    let mut text = if stable { "stable\n".to_string() } else { "not stable\n".to_string() };
    if let Some(v) = &v {
        writeln!(text, "vector ({})", v.join(", ")).unwrap();
    }
    Ok(output(text, &StableOutput { n: t.n(), d: t.d(), stable, vector: v }))
}

fn samples(report: &FlatnessReport) -> Vec<RaySample> {
    report.fibers.iter().map(|f| RaySample { lambda: f.lambda.clone(), colength: f.colength }).collect()
}

fn sample_text(samples: &[RaySample]) -> String {
    samples
        .iter()
        .map(|s| match s.colength {
            Some(c) => format!("{} -> {c}", s.lambda),
            None => format!("{} -> ?", s.lambda),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn ray(s: &Settings, i: &PolyInput, direction: usize, lambdas: Option<&str>) -> Result<Output, CliError> {
    let (scheme, n) = scheme(s, i)?;
    if direction == 0 || direction > n {
        return Err(CliError::Usage(format!("direction must lie in 1..={n}")));
    }
    let ideal = scheme.ideal(n, s.cap)?;
    let rd = ray_decompose(&ideal, direction - 1)?.with_truncation_cap(s.cap);
    let upper = verify_flatness_by_colength(&rd, &default_samples(), RayFamily::Upper);
    let lower = verify_flatness_by_colength(&rd, &default_samples(), RayFamily::Lower);
    let mut fibers = Vec::new();
    for l in lambdas.map(input::scalars).transpose()?.unwrap_or_default() {
        for (family, fiber) in [("upper", rd.upper_ray_fiber(&l)?), ("lower", rd.lower_ray_fiber(&l)?)] {
            fibers.push(RayFiber {
                lambda: format_scalar(&l),
                family: family.into(),
                colength: fiber.colength(),
                generators: strings(&fiber.border_generators()),
            });
        }
    }
    let out = RayOutput {
        vars: n,
        direction,
        ray_order: rd.nu(),
        colength: ideal.colength(),
        q: rd.q().to_string(),
        j_generators: strings(rd.j_generators()),
        upper: samples(&upper),
        lower: samples(&lower),
        upper_flat: upper.pass,
        fibers,
    };
    let mut text = format!(
        "ray order {} along a{direction}\ncolength {}\nq = {}\nJ: {} generators\n",
        out.ray_order,
        out.colength,
        out.q,
        out.j_generators.len()
    );
    writeln!(text, "upper fibers: {}{}", sample_text(&out.upper), if out.upper_flat { " (flat)" } else { "" }).unwrap();
    writeln!(text, "lower fibers: {}", sample_text(&out.lower)).unwrap();
    for f in &out.fibers {
        writeln!(text, "{} fiber at {}: colength {}", f.family, f.lambda, f.colength).unwrap();
        for g in &f.generators {
            writeln!(text, "  {g}").unwrap();
        }
    }
    Ok(output(text, &out))
}

pub fn init_ideal(s: &Settings, i: &PolyInput, weight: &str) -> Result<Output, CliError> {
    let (scheme, n) = scheme(s, i)?;
    let w = input::integers(weight)?;
    let init = scheme.ideal(n, s.cap)?.initial_ideal(&w)?;
    let (text, out) = ideal_output(&init, Vec::new())?;
    Ok(output(text, &out))
}

pub fn intersect(
    s: &Settings,
    systems: &[String],
    ideals: &[String],
    points: &[String],
    file: Option<&Path>,
) -> Result<Output, CliError> {
    let parts: Vec<FiniteIdeal> = match file {
        Some(path) => {
            let value: serde_json::Value = serde_json::from_str(&input::read(path)?)
                .map_err(|e| CliError::Usage(format!("{} is not valid JSON: {e}", path.display())))?;
            let payload = value.get("payload").cloned().unwrap_or(value);
            let payload: SchemePayload = serde_json::from_value(payload)
                .map_err(|e| CliError::Usage(format!("{} does not describe a scheme: {e}", path.display())))?;
            payload.build()?.parts.into_iter().map(|p| p.ideal).collect()
        }
        None => {
            let coords = points.iter().map(|p| input::scalars(p)).collect::<Result<Vec<_>, _>>()?;
            let n = s.vars.unwrap_or_else(|| {
                let from_polys = systems.iter().chain(ideals).map(|t| input::nvars(None, t));
                from_polys.chain(coords.iter().map(Vec::len)).max().unwrap_or(1)
            });
            let mut parts = Vec::new();
            for text in systems {
                parts.push(Scheme::Inverse(Scheme::parse(text, n)?.inverse()?.clone()).ideal(n, s.cap)?);
            }
            for text in ideals {
                match Scheme::parse(text, n)? {
                    Scheme::Ideal(gens) => parts.push(FiniteIdeal::new(n, gens, s.cap)?),
                    Scheme::Inverse(_) => return Err(CliError::Usage("--ideal needs polynomials in a1..an".into())),
                }
            }
            for p in coords {
                if p.len() != n {
                    return Err(CliError::Usage(format!("point has {} coordinates, expected {n}", p.len())));
                }
                parts.push(FiniteIdeal::point(&p));
            }
            parts
        }
    };
    let mut it = parts.iter();
    let first = it.next().ok_or_else(|| CliError::Usage("no components given".into()))?;
    let mut ideal = first.clone();
    for p in it {
        ideal = ideal.intersect(p)?;
    }
    let (text, out) = ideal_output(&ideal, parts.iter().map(FiniteIdeal::colength).collect())?;
    Ok(output(text, &out))
}

pub fn verify_paper(fixtures: &[PathBuf]) -> Result<Output, CliError> {
    let report = if fixtures.is_empty() {
        run_all()
    } else {
        let loaded = fixtures.iter().map(|p| load_fixture(p)).collect::<Result<Vec<_>, _>>()?;
        run_fixtures(&loaded)
    };
    let json = serde_json::from_str(&report.to_json()).expect("report serializes to JSON");
    Ok(Output { text: report.to_text(), json, success: report.all_pass })
}
