//! Ray orders, ray decompositions and the fibers of ray families.
//!
//! For a local ideal `I` and a direction `i`, let `p_i` be the ideal of the
//! other variables. The ray order `ν` is the least exponent with
//! `a_i^ν - q ∈ I` for some `q ∈ p_i`; then `I = J + (a_i^ν - q)` with
//! `J = I ∩ p_i`. The upper (lower) family replaces `a_i^ν - q` by
//! `a_i^ν - t a_i^(ν-1) - q` (`a_i^ν - t a_i - q`).

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{monomial_image, QuotientAlgebra};
use crate::apolarity::{apolar_algebra, diff_closure, hilbert_function, ApolarError, DiffClosure, InverseSystem};
use crate::exactalg::{format_scalar, int, LinalgError, Matrix, Scalar, SparseRow, TrackedEchelon};
use crate::ideals::{FiniteIdeal, IdealError, DEFAULT_TRUNCATION_CAP};
use crate::poly::{
    contract, contract_var, divided_power, divided_power_of, parse_polynomial, DualPolynomial, Monomial, MonomialIndex,
    OperatorPolynomial, PolyError,
};
use crate::profile::GradedProfile;
use crate::random;

/// Default parameter values for fiber sampling.
#[must_use]
pub fn default_samples() -> Vec<Scalar> {
    vec![int(0), int(1), int(2), int(-1), crate::exactalg::ratio(1, 2)]
}

/// Failures of ray computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RayError {
    #[error("ray computations need an ideal supported at the origin")]
    NotLocal,
    #[error("direction {0} is out of range")]
    DirectionOutOfRange(usize),
    #[error("the parameter must be nonzero")]
    ZeroParameter,
    #[error("Hilbert function {0} does not have the shape (1, H1..Hc, 1..1) with s >= 2c")]
    HilbertShape(String),
    #[error("invalid standard form: {0}")]
    InvalidStandardForm(String),
    #[error("no coordinate change in the candidate slate produces a standard form")]
    NoSuitableDirection,
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Apolar(#[from] ApolarError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Images in `R/I` of the monomials in `p_i`, with a greedy basis of their span.
struct RayData {
    r: u32,
    memo: HashMap<Monomial, SparseRow>,
    actions: Vec<crate::algebra::SparseAction>,
    tracked: TrackedEchelon,
    p_basis: Vec<Monomial>,
    relations: Vec<OperatorPolynomial>,
}

impl RayData {
    fn new(ideal: &FiniteIdeal, dir: usize) -> Result<Self, RayError> {
        let n = ideal.nvars();
        if dir >= n {
            return Err(RayError::DirectionOutOfRange(dir));
        }
        if !ideal.is_local() {
            return Err(RayError::NotLocal);
        }
        let r = ideal.nilpotency_index()?;
        let alg = ideal.algebra();
        let mut data = Self {
            r,
            memo: HashMap::from([(Monomial::one(n), vec![(0, Scalar::one())])]),
            actions: alg.actions(),
            tracked: TrackedEchelon::new(alg.dim()),
            p_basis: Vec::new(),
            relations: Vec::new(),
        };
        if alg.dim() == 0 {
            return Ok(data);
        }
        let index = MonomialIndex::new(n, r);
        for u in index.monomials() {
            if u.degree() == u.exp(dir) {
                continue;
            }
            let v = monomial_image(&mut data.memo, &data.actions, u);
            match data.tracked.express(&v) {
                Some(coeffs) => {
                    let rel = data.combination(&coeffs);
                    data.relations.push(&OperatorPolynomial::monomial(u.clone()) - &rel);
                }
                None => {
                    data.tracked.insert(&v);
                    data.p_basis.push(u.clone());
                }
            }
        }
        Ok(data)
    }

    fn combination(&self, coeffs: &[Scalar]) -> OperatorPolynomial {
        let n = self.actions.len();
        OperatorPolynomial::from_terms(n, self.p_basis.iter().cloned().zip(coeffs.iter().cloned()))
    }

    /// `(ν, q)` with `a_dir^ν - q ∈ I` and `q` in the span of the basis monomials.
    fn order(&mut self, dir: usize) -> (u32, OperatorPolynomial) {
        let n = self.actions.len();
        if self.actions.is_empty() || !self.memo.contains_key(&Monomial::one(n)) {
            return (0, OperatorPolynomial::zero(n));
        }
        for nu in 0..=self.r {
            let v = monomial_image(&mut self.memo, &self.actions, &Monomial::var_pow(n, dir, nu));
            if let Some(coeffs) = self.tracked.express(&v) {
                return (nu, self.combination(&coeffs));
            }
        }
        unreachable!("a_i^r is zero in the quotient")
    }
}

/// The ray order of a local ideal in direction `dir`.
pub fn ray_order(ideal: &FiniteIdeal, dir: usize) -> Result<u32, RayError> {
    if ideal.colength() == 0 {
        return if dir < ideal.nvars() { Ok(0) } else { Err(RayError::DirectionOutOfRange(dir)) };
    }
    Ok(RayData::new(ideal, dir)?.order(dir).0)
}

/// `I = J + (a_i^ν - q)` with `J = I ∩ p_i` given by generators.
#[derive(Clone, Debug)]
pub struct RayDecomposition {
    ideal: FiniteIdeal,
    direction: usize,
    j_generators: Vec<OperatorPolynomial>,
    q: OperatorPolynomial,
    nu: u32,
    cap: u32,
}

/// Computes the ray decomposition with `J = I ∩ p_dir` and the canonical `q`:
/// the unique combination of the greedily chosen standard monomials of `p_dir`.
pub fn ray_decompose(ideal: &FiniteIdeal, dir: usize) -> Result<RayDecomposition, RayError> {
    let n = ideal.nvars();
    if dir >= n {
        return Err(RayError::DirectionOutOfRange(dir));
    }
    let (j_generators, q, nu) = if ideal.colength() == 0 {
        (Vec::new(), OperatorPolynomial::zero(n), 0)
    } else {
        let mut data = RayData::new(ideal, dir)?;
        let (nu, q) = data.order(dir);
        (data.relations, q, nu)
    };
    Ok(RayDecomposition { ideal: ideal.clone(), direction: dir, j_generators, q, nu, cap: DEFAULT_TRUNCATION_CAP })
}

impl RayDecomposition {
    #[must_use]
    pub fn ideal(&self) -> &FiniteIdeal {
        &self.ideal
    }

    #[must_use]
    pub fn direction(&self) -> usize {
        self.direction
    }

    /// Generators of `J`, spanning `J` in degrees up to the nilpotency index.
    #[must_use]
    pub fn j_generators(&self) -> &[OperatorPolynomial] {
        &self.j_generators
    }

    #[must_use]
    pub fn q(&self) -> &OperatorPolynomial {
        &self.q
    }

    #[must_use]
    pub fn nu(&self) -> u32 {
        self.nu
    }

    /// Uses `cap` as truncation cap when fibers are built.
    #[must_use]
    pub fn with_truncation_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    /// The same data with `q` replaced by `q + delta`; no longer a
    /// decomposition of the original ideal in general.
    #[must_use]
    pub fn with_perturbed_q(mut self, delta: &OperatorPolynomial) -> Self {
        self.q = &self.q + delta;
        self
    }

    fn power(&self, e: u32) -> OperatorPolynomial {
        OperatorPolynomial::monomial(Monomial::var_pow(self.ideal.nvars(), self.direction, e))
    }

    fn fiber(&self, element: OperatorPolynomial) -> Result<FiniteIdeal, RayError> {
        if self.nu == 0 {
            return Ok(self.ideal.clone());
        }
        let mut gens = self.j_generators.clone();
        gens.push(element);
        Ok(FiniteIdeal::new(self.ideal.nvars(), gens, self.cap)?)
    }

    /// `J + (a_i^ν - q)`.
    pub fn recompose(&self) -> Result<FiniteIdeal, RayError> {
        self.fiber(&self.power(self.nu) - &self.q)
    }

    /// `J + (a_i^ν - λ a_i^(ν-1) - q)`.
    pub fn upper_ray_fiber(&self, lambda: &Scalar) -> Result<FiniteIdeal, RayError> {
        if self.nu == 0 {
            return Ok(self.ideal.clone());
        }
        let f = &(&self.power(self.nu) - &self.power(self.nu - 1).scale(lambda)) - &self.q;
        self.fiber(f)
    }

    /// `J + (a_i^ν - λ a_i - q)`.
    pub fn lower_ray_fiber(&self, lambda: &Scalar) -> Result<FiniteIdeal, RayError> {
        if self.nu == 0 {
            return Ok(self.ideal.clone());
        }
        let f = &(&self.power(self.nu) - &self.power(1).scale(lambda)) - &self.q;
        self.fiber(f)
    }
}

/// Which ray family to sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RayFamily {
    Upper,
    Lower,
}

/// Colength of one fiber; `None` when the fiber could not be certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberColength {
    pub lambda: String,
    pub colength: Option<usize>,
}

/// Result of colength sampling along a ray family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    pub family: RayFamily,
    /// Colength of the decomposed ideal.
    pub expected: usize,
    pub fibers: Vec<FiberColength>,
    pub pass: bool,
    /// First parameter whose fiber colength differs from `expected`.
    pub offending: Option<String>,
}

/// Samples fiber colengths at `samples` (0 is always included) and compares
/// them with the colength of the decomposed ideal.
#[must_use]
pub fn verify_flatness_by_colength(rd: &RayDecomposition, samples: &[Scalar], family: RayFamily) -> FlatnessReport {
    let mut points: Vec<Scalar> = vec![Scalar::zero()];
    points.extend(samples.iter().filter(|x| !x.is_zero()).cloned());
    let fibers: Vec<FiberColength> = points
        .par_iter()
        .map(|l| {
            let fiber = match family {
                RayFamily::Upper => rd.upper_ray_fiber(l),
                RayFamily::Lower => rd.lower_ray_fiber(l),
            };
            FiberColength { lambda: format_scalar(l), colength: fiber.ok().map(|f| f.colength()) }
        })
        .collect();
    let expected = rd.ideal.colength();
    let offending = fibers.iter().find(|f| f.colength != Some(expected)).map(|f| f.lambda.clone());
    FlatnessReport { family, expected, pass: offending.is_none(), offending, fibers }
}

/// Inverse system `x1^(s) + g, W` with `a1^c ⌟ g = 0`, `deg g <= c+1` and
/// `a1^c ⌟ h = 0` for `h ∈ W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    n: usize,
    s: u32,
    c: u32,
    g: DualPolynomial,
    w: Vec<DualPolynomial>,
}

/// Splits a local Hilbert function `(1, H1..Hc, 1..1)` into `(s, c)` with `c`
/// minimal, or `None` if it is not of that shape with `s >= 2c`.
#[must_use]
pub fn tail_shape(h: &GradedProfile) -> Option<(u32, u32)> {
    let v = h.values();
    if v.first() != Some(&1) || v.contains(&0) {
        return None;
    }
    let s = u32::try_from(v.len() - 1).ok()?;
    let c = v.iter().rposition(|&x| x >= 2).map_or(0, |k| k as u32);
    (s >= 2 * c).then_some((s, c))
}

impl StandardForm {
    /// Validates all defining conditions, including the Hilbert function shape.
    pub fn new(n: usize, s: u32, c: u32, g: DualPolynomial, w: Vec<DualPolynomial>) -> Result<Self, RayError> {
        let bad = |m: &str| Err(RayError::InvalidStandardForm(m.to_string()));
        if n == 0 || s == 0 {
            return bad("need at least one variable and s >= 1");
        }
        if s < 2 * c {
            return bad("s must be at least 2c");
        }
        if g.nvars() != n || w.iter().any(|h| h.nvars() != n) {
            return Err(PolyError::VarCountMismatch { expected: n, found: g.nvars() }.into());
        }
        let a1c = OperatorPolynomial::monomial(Monomial::var_pow(n, 0, c));
        if !contract(&a1c, &g)?.is_zero() {
            return bad("a1^c does not annihilate g");
        }
        if g.degree().is_some_and(|d| d > c + 1) {
            return bad("deg g exceeds c + 1");
        }
        for h in &w {
            if !contract(&a1c, h)?.is_zero() {
                return bad("a1^c does not annihilate a member of W");
            }
        }
        let sf = Self { n, s, c, g, w };
        let h = sf.hilbert_function();
        match tail_shape(&h) {
            Some((s2, c2)) if s2 == s && c2 <= c => Ok(sf),
            _ => Err(RayError::HilbertShape(h.to_string())),
        }
    }

    /// Parses and validates a JSON description.
    pub fn from_spec(spec: &StandardFormSpec) -> Result<Self, RayError> {
        let g = parse_polynomial(&spec.g, spec.vars)?;
        let w = spec.w.iter().map(|h| parse_polynomial(h, spec.vars)).collect::<Result<Vec<_>, _>>()?;
        Self::new(spec.vars, spec.s, spec.c, g, w)
    }

    #[must_use]
    pub fn to_spec(&self) -> StandardFormSpec {
        StandardFormSpec {
            vars: self.n,
            s: self.s,
            c: self.c,
            g: self.g.to_string(),
            w: self.w.iter().map(ToString::to_string).collect(),
        }
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn s(&self) -> u32 {
        self.s
    }

    #[must_use]
    pub fn c(&self) -> u32 {
        self.c
    }

    #[must_use]
    pub fn g(&self) -> &DualPolynomial {
        &self.g
    }

    #[must_use]
    pub fn w(&self) -> &[DualPolynomial] {
        &self.w
    }

    /// `x1^(s) + g`.
    #[must_use]
    pub fn top_generator(&self) -> DualPolynomial {
        &divided_power(self.n, 0, self.s) + &self.g
    }

    #[must_use]
    pub fn inverse_system(&self) -> InverseSystem {
        let mut gens = vec![self.top_generator()];
        gens.extend(self.w.iter().cloned());
        InverseSystem::new(self.n, gens).expect("variable counts checked")
    }

    #[must_use]
    pub fn hilbert_function(&self) -> GradedProfile {
        hilbert_function(&self.inverse_system())
    }

    /// `Ann(x1^(s) + g, W)`.
    pub fn ideal(&self) -> Result<FiniteIdeal, RayError> {
        Ok(FiniteIdeal::from_algebra(apolar_algebra(&self.inverse_system())?))
    }

    /// `(x1 + 1/λ)^(s-1) - λ g, W`.
    pub fn shifted_inverse_system(&self, lambda: &Scalar) -> Result<InverseSystem, RayError> {
        if lambda.is_zero() {
            return Err(RayError::ZeroParameter);
        }
        let n = self.n;
        let base = &DualPolynomial::var(n, 0) + &DualPolynomial::constant(n, lambda.recip());
        let top = &divided_power_of(&base, self.s - 1) - &self.g.scale(lambda);
        let mut gens = vec![top];
        gens.extend(self.w.iter().cloned());
        Ok(InverseSystem::new(n, gens)?)
    }
}

/// JSON form of a [`StandardForm`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardFormSpec {
    pub vars: usize,
    pub s: u32,
    pub c: u32,
    pub g: String,
    #[serde(default)]
    pub w: Vec<String>,
}

/// `(a1 - λ, a2, ..., an) ∩ Ann((x1 + 1/λ)^(s-1) - λ g, W)`.
pub fn rayflat_predicted_fiber(sf: &StandardForm, lambda: &Scalar) -> Result<FiniteIdeal, RayError> {
    let shifted = FiniteIdeal::from_algebra(apolar_algebra(&sf.shifted_inverse_system(lambda)?)?);
    let mut p = vec![Scalar::zero(); sf.n];
    p[0] = lambda.clone();
    Ok(FiniteIdeal::point(&p).intersect(&shifted)?)
}

/// Linear change of coordinates given by new operator variables
/// `b_k = sum_j T[k][j] a_j`; the dual variables change by `x = T^t y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange {
    operator_matrix: Matrix,
}

impl CoordinateChange {
    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self { operator_matrix: Matrix::identity(n) }
    }

    /// Requires an invertible square matrix.
    pub fn new(operator_matrix: Matrix) -> Result<Self, RayError> {
        if operator_matrix.inverse().is_none() {
            return Err(LinalgError::Singular.into());
        }
        Ok(Self { operator_matrix })
    }

    #[must_use]
    pub fn operator_matrix(&self) -> &Matrix {
        &self.operator_matrix
    }

    /// Rewrites a dual polynomial in the new coordinates.
    pub fn apply_dual(&self, f: &DualPolynomial) -> Result<DualPolynomial, RayError> {
        let t = &self.operator_matrix;
        let n = t.rows();
        let images: Vec<DualPolynomial> = (0..n)
            .map(|j| DualPolynomial::from_terms(n, (0..n).map(|l| (Monomial::var(n, l), t.get(l, j).clone()))))
            .collect();
        Ok(f.substitute(&images)?)
    }

    pub fn apply_system(&self, e: &InverseSystem) -> Result<InverseSystem, RayError> {
        let gens = e.generators().iter().map(|f| self.apply_dual(f)).collect::<Result<Vec<_>, _>>()?;
        Ok(InverseSystem::new(e.nvars(), gens)?)
    }
}

/// Brings an inverse system with Hilbert function `(1, H1..Hc, 1..1)`,
/// `s >= 2c`, to standard form by a linear change of coordinates.
///
/// Candidate first operator variables are tried in a fixed order: coordinate
/// directions, sums and differences of two coordinates, then seeded random
/// forms. The first one giving the top form `x1^(s)` and admitting the
/// normalization of `g` and `W` is returned.
pub fn to_standard_form(e: &InverseSystem) -> Result<(StandardForm, CoordinateChange), RayError> {
    let n = e.nvars();
    let h = hilbert_function(e);
    let (s, c) = tail_shape(&h).ok_or_else(|| RayError::HilbertShape(h.to_string()))?;
    if s == 0 {
        return Err(RayError::HilbertShape(h.to_string()));
    }
    let closure = diff_closure(e);
    let f = closure.basis().into_iter().find(|p| p.degree() == Some(s)).expect("socle degree s");
    let top = f.homogeneous_part(s);
    // Operator linear forms killing the top form.
    let partials: Vec<DualPolynomial> = (0..n).map(|k| contract_var(k, &top)).collect();
    let (monos, m) = crate::poly::coefficient_matrix(&partials);
    let kernel = if monos.is_empty() { Matrix::identity(n).row_space() } else { m.transpose().kernel_basis() };
    if kernel.dim() + 1 != n {
        return Err(RayError::NoSuitableDirection);
    }
    for theta in slate(n) {
        if kernel.contains(&theta)? {
            continue;
        }
        let mut rows = vec![theta];
        rows.extend(kernel.basis().iter().cloned());
        let change = CoordinateChange::new(Matrix::from_rows(rows)?)?;
        if let Some(sf) = normalize(e, &closure, &change, &f, s, c)? {
            return Ok((sf, change));
        }
    }
    Err(RayError::NoSuitableDirection)
}

fn slate(n: usize) -> Vec<Vec<Scalar>> {
    let unit = |i: usize| (0..n).map(|k| if k == i { int(1) } else { int(0) }).collect::<Vec<_>>();
    let mut out: Vec<Vec<Scalar>> = (0..n).map(unit).collect();
    for i in 0..n {
        for j in i + 1..n {
            for sign in [1, -1] {
                let mut v = unit(i);
                v[j] = int(sign);
                out.push(v);
            }
        }
    }
    let mut rng = random::rng(random::DEFAULT_SEED);
    for _ in 0..16 {
        out.push((0..n).map(|_| int(rng.gen_range(-3..=3))).collect());
    }
    out
}

/// Normalizes `x1^(s) + g` and `W` after the coordinate change, if possible.
fn normalize(
    e: &InverseSystem,
    closure: &DiffClosure,
    change: &CoordinateChange,
    f: &DualPolynomial,
    s: u32,
    c: u32,
) -> Result<Option<StandardForm>, RayError> {
    let n = e.nvars();
    let y1s = divided_power(n, 0, s);
    let fy = change.apply_dual(f)?;
    let lead = fy.coefficient(&Monomial::var_pow(n, 0, s));
    if lead.is_zero() {
        return Ok(None);
    }
    let fy = fy.scale(&(y1s.coefficient(&Monomial::var_pow(n, 0, s)) / lead));
    let low: Vec<DualPolynomial> = closure
        .basis()
        .into_iter()
        .filter(|p| p.degree().is_some_and(|d| d <= c))
        .map(|p| change.apply_dual(&p))
        .collect::<Result<_, _>>()?;
    // F may move within F + m⌟F + M^{<=c} without changing the module.
    let mut q_gens: Vec<DualPolynomial> = (0..n).map(|k| contract_var(k, &fy)).filter(|p| !p.is_zero()).collect();
    q_gens.extend(low.iter().cloned());
    let q_space = diff_closure(&InverseSystem::new(n, q_gens)?).basis();
    let index = MonomialIndex::new(n, s);
    let bad = |m: &Monomial| m.degree() < s && (m.exp(0) >= c || m.degree() > c + 1);
    let bad_row = |p: &DualPolynomial| -> SparseRow {
        p.terms().filter(|(m, _)| bad(m)).map(|(m, x)| (index.index(m).expect("degree <= s"), x.clone())).collect()
    };
    let mut tracked = TrackedEchelon::new(index.len());
    let mut accepted = Vec::new();
    for p in &q_space {
        if tracked.insert(&bad_row(p)).is_some() {
            accepted.push(p.clone());
        }
    }
    let target = &fy - &y1s;
    let Some(coeffs) = tracked.express(&bad_row(&target)) else { return Ok(None) };
    let mut g = target;
    for (p, x) in accepted.iter().zip(&coeffs) {
        g = &g - &p.scale(x);
    }
    let top = &y1s + &g;
    // W: generators of M^{<=c} modulo Diff(top), highest degree first.
    let mut low_sorted = low;
    low_sorted.sort_by_key(|p| std::cmp::Reverse(p.degree()));
    let y1c = divided_power(n, 0, c);
    let a1c = OperatorPolynomial::monomial(Monomial::var_pow(n, 0, c));
    let mut w: Vec<DualPolynomial> = Vec::new();
    let mut span = diff_closure(&InverseSystem::new(n, vec![top.clone()])?);
    for h in low_sorted {
        if span.contains(&h) {
            continue;
        }
        let k = contract(&a1c, &h)?.coefficient(&Monomial::one(n));
        let h = &h - &y1c.scale(&k);
        w.push(h);
        let mut gens = vec![top.clone()];
        gens.extend(w.iter().cloned());
        span = diff_closure(&InverseSystem::new(n, gens)?);
    }
    let Ok(sf) = StandardForm::new(n, s, c, g, w) else { return Ok(None) };
    let moved = diff_closure(&change.apply_system(e)?);
    let ours = diff_closure(&sf.inverse_system());
    let same = moved.dim() == ours.dim() && ours.basis().iter().all(|p| moved.contains(p));
    Ok(same.then_some(sf))
}

/// Quotient algebra of a standard form, for callers that need matrices.
pub fn standard_form_algebra(sf: &StandardForm) -> Result<QuotientAlgebra, RayError> {
    Ok(apolar_algebra(&sf.inverse_system())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;
    use crate::poly::parse_list;

    fn dual(s: &str, n: usize) -> DualPolynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn op(s: &str, n: usize) -> OperatorPolynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn small_form() -> StandardForm {
        StandardForm::new(2, 4, 1, dual("x2^(2)", 2), vec![]).unwrap()
    }

    #[test]
    fn ray_orders() {
        let i = FiniteIdeal::new(2, parse_list("a1^3, a2", 2).unwrap(), 12).unwrap();
        assert_eq!(ray_order(&i, 0).unwrap(), 3);
        assert_eq!(ray_order(&i, 1).unwrap(), 1);
        let sf = small_form();
        let i = sf.ideal().unwrap();
        assert_eq!(i.colength(), 6);
        assert_eq!(ray_order(&i, 0).unwrap(), 4);
        // ν = colength - dim p_i A
        let rd = ray_decompose(&i, 0).unwrap();
        assert_eq!(rd.q(), &op("a2^2", 2));
        let moved = i.translate(&[int(1), int(0)]).unwrap();
        assert!(matches!(ray_order(&moved, 0), Err(RayError::NotLocal)));
    }

    #[test]
    fn decompositions_recompose() {
        let i = FiniteIdeal::new(2, parse_list("a1^3, a2", 2).unwrap(), 12).unwrap();
        let rd = ray_decompose(&i, 0).unwrap();
        assert!(rd.q().is_zero());
        assert_eq!(rd.nu(), 3);
        assert!(rd.recompose().unwrap().equals(&i).unwrap());
        let i = small_form().ideal().unwrap();
        let rd = ray_decompose(&i, 0).unwrap();
        assert!(rd.recompose().unwrap().equals(&i).unwrap());
        assert!(rd.upper_ray_fiber(&int(0)).unwrap().equals(&i).unwrap());
        assert!(rd.lower_ray_fiber(&int(0)).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn fiber_identity_on_small_form() {
        let sf = small_form();
        let rd = ray_decompose(&sf.ideal().unwrap(), 0).unwrap();
        for l in [int(1), int(2), int(-1)] {
            let fiber = rd.upper_ray_fiber(&l).unwrap();
            assert_eq!(fiber.colength(), 6);
            assert!(fiber.equals(&rayflat_predicted_fiber(&sf, &l).unwrap()).unwrap());
            assert!(!fiber.is_local());
        }
        let h = hilbert_function(&sf.shifted_inverse_system(&ratio(1, 2)).unwrap());
        assert_eq!(h.values(), &[1, 2, 1, 1]);
        let report = verify_flatness_by_colength(&rd, &default_samples(), RayFamily::Upper);
        assert!(report.pass, "{report:?}");
        let broken = rd.clone().with_perturbed_q(&op("a2", 2));
        assert!(!verify_flatness_by_colength(&broken, &default_samples(), RayFamily::Upper).pass);
    }

    #[test]
    fn curvilinear_prediction() {
        let sf = StandardForm::new(1, 3, 0, DualPolynomial::zero(1), vec![]).unwrap();
        let p = rayflat_predicted_fiber(&sf, &int(2)).unwrap();
        assert_eq!(p.colength(), 4);
        assert!(matches!(rayflat_predicted_fiber(&sf, &int(0)), Err(RayError::ZeroParameter)));
    }

    #[test]
    fn invalid_forms_are_rejected() {
        assert!(StandardForm::new(2, 4, 1, dual("x1*x2", 2), vec![]).is_err());
        assert!(StandardForm::new(2, 3, 2, DualPolynomial::zero(2), vec![]).is_err());
    }

    #[test]
    fn standard_form_recovery() {
        let (sf, change) = to_standard_form(&InverseSystem::parse("x1^(4)", 1).unwrap()).unwrap();
        assert_eq!(change, CoordinateChange::identity(1));
        assert!(sf.g().is_zero());
        // lower x1-terms are absorbed
        let (sf, _) = to_standard_form(&InverseSystem::parse("x1^(4) + x1^(2) + x2^(2)", 2).unwrap()).unwrap();
        assert_eq!((sf.s(), sf.c()), (4, 1));
        assert!(contract(&op("a1", 2), sf.g()).unwrap().is_zero());
        // swapped coordinates need a different first variable
        let (sf, change) = to_standard_form(&InverseSystem::parse("x2^(4) + x1^(2)", 2).unwrap()).unwrap();
        assert_eq!(sf.g(), &dual("x2^(2)", 2));
        assert_ne!(change, CoordinateChange::identity(2));
        // a sheared pure power
        let (sf, _) = to_standard_form(&InverseSystem::parse("(x1 + x2)^(4) + x2^(2)", 2).unwrap()).unwrap();
        assert_eq!(sf.hilbert_function().values(), &[1, 2, 1, 1, 1]);
    }
}
