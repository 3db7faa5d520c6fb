//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::Instant;

use artinian::apolarity::{
    apolar_algebra, apolar_ideal_piece, hilbert_function, minimal_generator_count, socle_type, InverseSystem,
};
use artinian::catalog::payload::{BuiltTuple, MatrixTuplePayload, SchemePayload};
use artinian::catalog::{embedded_fixtures, embedded_source, Fixture};
use artinian::commuting::{
    hilb_tangent_dim, principal_component_dim, projected_tangent_dim, tangent_space_dim, CommutingTuple,
};
use artinian::exactalg::{int, Scalar};
use artinian::ideals::{FamilyGeneratorSpec, FiniteIdeal, LinearFamily, LinearFamilySpec, DEFAULT_TRUNCATION_CAP};
use artinian::poly::{monomials_of_degree, parse_list, DualPolynomial, OperatorPolynomial};
use artinian::random::{rng, small_scalar};
use artinian::raydeg::{ray_decompose, ray_order, rayflat_predicted_fiber, StandardForm};
use num_traits::Zero;
use rand::Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, computed: T, expected: T) -> Outcome {
    ensure(computed == expected, || format!("{what}: expected {expected:?}, computed {computed:?}"))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn fixture(id: &str) -> Result<Fixture, String> {
    let text = embedded_source(&format!("{id}.json")).ok_or_else(|| format!("missing fixture {id}"))?;
    Fixture::from_json(text).map_err(err)
}

fn tuple_payload(id: &str) -> Result<BuiltTuple, String> {
    let p: MatrixTuplePayload = serde_json::from_value(fixture(id)?.payload).map_err(err)?;
    p.build().map_err(err)
}

fn tuple_at(built: &BuiltTuple, lambda: i64, t: Option<i64>) -> Result<CommutingTuple, String> {
    built.tuple(&int(lambda), t.map(int).as_ref()).map_err(err)
}

fn ops(text: &str, n: usize) -> Result<Vec<OperatorPolynomial>, String> {
    parse_list(text, n).map_err(err)
}

fn duals(text: &str, n: usize) -> Result<InverseSystem, String> {
    InverseSystem::parse(text, n).map_err(err)
}

fn criterion_1() -> Outcome {
    let blocks = [("table2_143", "(1,4,3)", 8), ("table2_153", "(1,5,3)", 9), ("table2_163", "(1,6,3)", 10)];
    for (id, hf, d) in blocks {
        let p: SchemePayload = serde_json::from_value(fixture(id)?.payload).map_err(err)?;
        let e = p.components[0].build(p.vars, DEFAULT_TRUNCATION_CAP).map_err(err)?;
        let e = e.inverse_system.ok_or("building block is not an inverse system")?;
        let h = hilbert_function(&e);
        eq(id, h.to_string().as_str(), hf)?;
        eq(id, h.total(), d)?;
        eq(id, FiniteIdeal::from_algebra(apolar_algebra(&e).map_err(err)?).colength(), d)?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let expected = [
        "table2_143_pt",
        "table2_143_pt2",
        "table2_143_pt2_n5",
        "table2_143_pt2_n6",
        "table2_143_pt_n5",
        "table2_143_pt_n6",
        "table2_153_pt",
        "table2_153_pt_n6",
    ];
    let mut seen = Vec::new();
    for f in embedded_fixtures() {
        let f = f.map_err(|(name, e)| format!("{name}: {e}"))?;
        if !f.id.starts_with("table2_") {
            continue;
        }
        let p: SchemePayload = serde_json::from_value(f.payload.clone()).map_err(err)?;
        if p.components.len() < 2 {
            continue;
        }
        let cell = f.cell.ok_or_else(|| format!("{} has no table cell", f.id))?;
        let built = p.build().map_err(err)?;
        eq(&f.id, built.ideal.colength(), cell.d)?;
        seen.push(f.id);
    }
    eq("intersection fixtures", seen, expected.map(String::from).to_vec())
}

fn criterion_3() -> Outcome {
    let built = tuple_payload("prop_144_tangent")?;
    let t = tuple_at(&built, 0, None)?;
    eq("tangent dimension", tangent_space_dim(&t, None).map_err(err)?, 108)?;
    eq("principal component", principal_component_dim(9, 4), 108)
}

fn criterion_4() -> Outcome {
    let built = tuple_payload("prop_smooth1nr1")?;
    let t = tuple_at(&built, 0, None)?;
    eq("tangent dimension", tangent_space_dim(&t, None).map_err(err)?, 130)?;
    eq("principal component", principal_component_dim(10, 4), 130)?;
    eq("Hilbert scheme tangent", hilb_tangent_dim(&t).map_err(err)?, 40)
}

fn criterion_5() -> Outcome {
    let built = tuple_payload("prop_145_shapes")?;
    let t = tuple_at(&built, 0, None)?;
    let z = built.shape("Z").map_err(err)?;
    let v = built.shape("V").map_err(err)?;
    ensure(z.admits(t.matrices()), || "tuple does not lie in Z".into())?;
    eq("dim T within Z", tangent_space_dim(&t, Some(&z)).map_err(err)?, 77)?;
    let projected = projected_tangent_dim(&t, Some(&z), &v).map_err(err)?;
    eq("projection onto V", projected, 66)?;
    let upper = CommutingTuple::new(v.mask(t.matrices())).map_err(err)?;
    let target = tangent_space_dim(&upper, Some(&v)).map_err(err)?;
    eq("projection is surjective onto T_V", projected, target)
}

fn criterion_6() -> Outcome {
    let built = tuple_payload("prop_144_tangent")?;
    let a1 = tuple_at(&built, 1, None)?.matrix(0).clone();
    let chi = a1.char_poly().map_err(err)?;
    eq("degree", chi.degree(), Some(9))?;
    eq("squarefree", chi.is_squarefree().map_err(err)?, true)?;
    let built = tuple_payload("prop_1432_case2")?;
    let m = built.matrices(&Scalar::zero(), Some(&int(1))).map_err(err)?;
    eq("dim ker (A1 + X1)^10", m[0].power_kernel_dim(10).map_err(err)?, 7)
}

fn criterion_7() -> Outcome {
    let j1 = FiniteIdeal::point(&[int(-1), int(0), int(0), int(0)]);
    let j2 = FiniteIdeal::new(
        4,
        ops("a4^2 - a1^3, a3*a4 - a2^3, a2*a4, a1*a4, a3^2, a2*a3, a1*a3, a1*a2, a2^4", 4)?,
        DEFAULT_TRUNCATION_CAP,
    )
    .map_err(err)?;
    eq("HF of J2", j2.local_hilbert_function().map_err(err)?.to_string(), "(1,4,2,2)".into())?;
    let union = j1.intersect(&j2).map_err(err)?;
    eq("colength of J1 ∩ J2", union.colength(), 10)?;
    let listed = FiniteIdeal::with_power_of_max_ideal(
        4,
        ops("a4^2 - a1^4, a3*a4 - a2^3, a2*a4, a1*a4, a3^2, a2*a3, a1*a3, a1*a2, a2^4", 4)?,
        5,
    )
    .map_err(err)?;
    let init = union.initial_ideal(&[1, 1, 1, 2]).map_err(err)?;
    eq("initial ideal equals I", init.equals(&listed).map_err(err)?, true)?;
    let t = CommutingTuple::new(listed.algebra().matrices()).map_err(err)?;
    eq("Hilbert scheme tangent at I", hilb_tangent_dim(&t).map_err(err)?, 40)
}

fn criterion_8() -> Outcome {
    let g = duals("x2^(2)", 4)?.generators()[0].clone();
    let w = duals("x2*x3 + x4^(2)", 4)?.generators().to_vec();
    let sf = StandardForm::new(4, 4, 2, g, w).map_err(err)?;
    eq("HF", sf.hilbert_function().to_string(), "(1,4,2,1,1)".into())?;
    let ideal = sf.ideal().map_err(err)?;
    let local = CommutingTuple::new(ideal.algebra().matrices()).map_err(err)?;
    eq("socle dimension", local.socle_dim(), 2)?;
    let nu = ray_order(&ideal, 0).map_err(err)?;
    ensure(sf.c() < nu && nu <= sf.s(), || format!("ray order {nu} outside [c+1, s]"))?;
    let rd = ray_decompose(&ideal, 0).map_err(err)?;
    for l in [1, 2, -1] {
        let fiber = rd.upper_ray_fiber(&int(l)).map_err(err)?;
        let predicted = rayflat_predicted_fiber(&sf, &int(l)).map_err(err)?;
        eq(&format!("fiber identity at {l}"), fiber.equals(&predicted).map_err(err)?, true)?;
    }
    for l in [0, 1, 2, -1] {
        eq(&format!("colength at {l}"), rd.upper_ray_fiber(&int(l)).map_err(err)?.colength(), 9)?;
    }
    let shifted = sf.shifted_inverse_system(&int(1)).map_err(err)?;
    eq("shifted HF", hilbert_function(&shifted).to_string(), "(1,4,2,1)".into())
}

fn random_system(rng: &mut impl Rng) -> Result<InverseSystem, String> {
    let n = rng.gen_range(1..=4);
    let count = rng.gen_range(1..=2);
    let mut gens = Vec::new();
    for _ in 0..count {
        let k = rng.gen_range(1..=4);
        let monos = monomials_of_degree(n, k);
        let terms = rng.gen_range(1..=3);
        let f = DualPolynomial::from_terms(
            n,
            (0..terms).map(|_| (monos[rng.gen_range(0..monos.len())].clone(), small_scalar(rng, 3))),
        );
        gens.push(f);
    }
    InverseSystem::new(n, gens).map_err(err)
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let mut accepted = 0;
    let mut attempts = 0;
    let mut shapes = std::collections::BTreeSet::new();
    while accepted < 50 {
        attempts += 1;
        if attempts > 10_000 {
            return Err("could not draw 50 systems".into());
        }
        let e = random_system(&mut r)?;
        if !e.is_homogeneous() || e.generators().iter().all(DualPolynomial::is_zero) {
            continue;
        }
        let h = hilbert_function(&e);
        if h.total() > 10 {
            continue;
        }
        accepted += 1;
        shapes.insert((e.nvars(), h.to_string()));
        let alg = apolar_algebra(&e).map_err(err)?;
        let t = alg.tuple().ok_or("apolar algebra without a tuple")?;
        eq("HF vs kernel profile", t.kernel_profile().map_err(err)?, h.clone())?;
        let socle: usize = socle_type(&e).map_err(err)?.values().sum();
        eq("socle type vs common kernel", socle, t.socle_dim())?;
        ensure(artinian::commuting::check_commute(t.matrices()).map_err(err)?.is_none(), || {
            "apolar tuple does not commute".into()
        })?;
        eq("stable at 1", t.is_stable(&alg.one()).map_err(err)?, true)?;
    }
    ensure(shapes.len() >= 15, || format!("only {} distinct Hilbert functions drawn", shapes.len()))
}

fn criterion_10() -> Outcome {
    let e = duals("x1^3 + x2^3 + x3^3", 3)?;
    let listed = ops("a1*a2, a2*a3, a1*a3, a1^3 - a2^3, a1^3 - a3^3", 3)?;
    for k in 0..=4u32 {
        let piece = apolar_ideal_piece(&e, k).map_err(err)?;
        let products: Vec<OperatorPolynomial> = listed
            .iter()
            .filter(|g| g.degree().is_some_and(|d| d <= k))
            .flat_map(|g| {
                let d = g.degree().unwrap_or(0);
                monomials_of_degree(3, k - d).into_iter().map(move |m| g.mul_monomial(&m))
            })
            .collect();
        ensure(products.iter().all(|g| piece.contains(g)), || format!("degree {k}: listed ideal is not apolar"))?;
        let span = piece.span_of(&products);
        eq(&format!("degree {k} piece"), span.map(|s| s.dim()), Some(piece.dim()))?;
    }
    let ann = FiniteIdeal::from_algebra(apolar_algebra(&e).map_err(err)?);
    let ideal = FiniteIdeal::new(3, listed, DEFAULT_TRUNCATION_CAP).map_err(err)?;
    eq("ideal equality", ideal.equals(&ann).map_err(err)?, true)?;
    eq("minimal cubic generators", minimal_generator_count(&e, 3).map_err(err)?, 2)
}

fn theta_family(first: &str, tails: [&str; 3], zeta: &str) -> Result<LinearFamily, String> {
    let quadrics = ["a3*a1", "a4*a1", "a3*a2", "a4*a2", "a3^2", "a4^2", "a3*a4"];
    let mut generators: Vec<FamilyGeneratorSpec> = std::iter::once(first)
        .chain(quadrics)
        .map(|b| FamilyGeneratorSpec { base: b.into(), tails: tails.iter().map(|t| (*t).to_string()).collect() })
        .collect();
    generators.push(FamilyGeneratorSpec { base: zeta.into(), tails: Vec::new() });
    LinearFamily::from_spec(&LinearFamilySpec { vars: 4, power_of_max_ideal: 5, generators }).map_err(err)
}

fn fiber_ranks() -> Outcome {
    let cases = [
        ("over Ann(x^4, x^2y, z, w)", "a2^2", ["a1^3", "a1^2*a2", "a1^4"], "a1^3*a2", 5),
        ("over Ann(x^4, y^3, z, w)", "a1*a2", ["a1^3", "a2^3", "a1^4"], "a2^4", 5),
        ("over Ann(x^3y, z, w)", "a2^2", ["a1^3", "a1^2*a2", "a1^3*a2"], "a1^4", 10),
        ("over Ann(x^4 + y^4, z, w)", "a1*a2", ["a1^3", "a2^3", "a1^4"], "a1^4 - a2^4", 10),
    ];
    for (name, first, tails, zeta, rank) in cases {
        let fam = theta_family(first, tails, zeta)?;
        eq(name, fam.parameter_count() - fam.first_order_constraint_rank().map_err(err)?, 24 - rank)?;
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1  building-block Hilbert functions", criterion_1),
        ("2  intersection colengths", criterion_2),
        ("3  tangent space of the (1,4,4) limit", criterion_3),
        ("4  tangent space of the (1,4,4,1) tuple", criterion_4),
        ("5  shape-constrained tangent spaces", criterion_5),
        ("6  eigenvalue certificates", criterion_6),
        ("7  (1,4,2,2,1) smoothing chain", criterion_7),
        ("8  ray degeneration of (1,4,2,1,1)", criterion_8),
        ("9  randomized oracle equivalence", criterion_9),
        ("10 apolar ideal of x^3+y^3+z^3", criterion_10),
        ("-  fiber dimensions 19 and 14", fiber_ranks),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("PASS  criterion {name}  ({ms} ms)"),
            Err(e) => {
                failed += 1;
                println!("FAIL  criterion {name}  ({ms} ms): {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
