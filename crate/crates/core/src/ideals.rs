//! Finite-colength ideals of `R = Q[a1..an]`.
//!
//! Every ideal is stored together with its quotient algebra (standard
//! monomials plus multiplication matrices), which answers membership,
//! equality, intersection, translation and initial ideals by linear algebra.
//!
//! Ideals given by generators are brought to that form by a truncated
//! Macaulay closure: at truncation degree `D` the span `V_D` is the smallest
//! subspace of `R_{<=D}` containing the generators and closed under
//! multiplication by variables as long as the degree stays at most `D`. Once
//! every monomial of degree `D` is a leading monomial of `V_D` and the induced
//! multiplication matrices on the standard monomials commute, the standard
//! monomials are a basis of `R/I`. Otherwise `D` grows by one, up to a cap.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{monomial_image, Evaluator, QuotientAlgebra};
use crate::commuting::CommutingError;
use crate::exactalg::{parse_scalar, LinalgError, Scalar, SparseEchelon, SparseRow, Subspace, TrackedEchelon};
use crate::poly::{parse_polynomial, Monomial, MonomialIndex, OperatorPolynomial, PolyError, Polynomial};
use crate::profile::GradedProfile;

/// Default cap on the truncation degree.
pub const DEFAULT_TRUNCATION_CAP: u32 = 12;

/// Failures of ideal computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("no finite-colength certificate up to truncation degree {cap}; the ideal likely has infinite colength")]
    LikelyInfiniteColength { cap: u32 },
    #[error("the ideal is not supported at the origin only")]
    NotLocal,
    #[error("weight vectors must be all positive, all negative or zero")]
    MixedWeights,
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Commuting(#[from] CommutingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Ideal of finite colength with its quotient algebra.
#[derive(Clone, Debug)]
pub struct FiniteIdeal {
    n: usize,
    generators: Vec<OperatorPolynomial>,
    truncation_degree: u32,
    power_certificate: Option<u32>,
    algebra: QuotientAlgebra,
}

/// Normal forms modulo an echelon span of operator polynomials.
struct ReductionEvaluator<'a> {
    n: usize,
    index: &'a MonomialIndex,
    echelon: &'a SparseEchelon,
    /// Terms of this degree or more are dropped (the ideal contains `m^r`).
    drop_from: Option<u32>,
}

impl ReductionEvaluator<'_> {
    fn multiply(&self, i: usize, v: &SparseRow) -> SparseRow {
        let mut out: SparseRow = v
            .iter()
            .filter_map(|(c, x)| {
                let m = self.index.monomial(*c).times_var(i);
                if self.drop_from.is_some_and(|r| m.degree() >= r) {
                    return None;
                }
                Some((self.index.index(&m).expect("degree within the index"), x.clone()))
            })
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }
}

impl Evaluator for ReductionEvaluator<'_> {
    fn nvars(&self) -> usize {
        self.n
    }
    fn start(&self) -> SparseRow {
        if self.drop_from == Some(0) {
            return Vec::new();
        }
        self.echelon.reduce(&[(0, Scalar::one())])
    }
    fn act(&self, i: usize, v: &SparseRow) -> SparseRow {
        self.echelon.reduce(&self.multiply(i, v))
    }
}

/// Closure state of the truncated span.
struct Closure {
    n: usize,
    index: MonomialIndex,
    echelon: SparseEchelon,
    /// Rows whose products by variables are still owed.
    boundary: Vec<SparseRow>,
}

impl Closure {
    fn new(n: usize, degree: u32) -> Self {
        let index = MonomialIndex::new(n, degree);
        let echelon = SparseEchelon::new(index.len());
        Self { n, index, echelon, boundary: Vec::new() }
    }

    /// Adds `rows` and closes under variables while degrees stay below
    /// `limit` (exclusive); with `truncate`, higher terms are dropped instead.
    fn absorb(&mut self, mut queue: Vec<SparseRow>, truncate: bool) {
        let limit = self.index.max_degree();
        while let Some(row) = queue.pop() {
            let reduced = self.echelon.reduce(&row);
            let Some(&(p, _)) = reduced.last() else { continue };
            self.echelon.insert(&reduced);
            let deg = self.index.monomial(p).degree();
            if deg < limit || truncate {
                let ev = ReductionEvaluator {
                    n: self.n,
                    index: &self.index,
                    echelon: &self.echelon,
                    drop_from: truncate.then_some(limit + 1),
                };
                for i in 0..self.n {
                    let m = ev.multiply(i, &reduced);
                    if !m.is_empty() {
                        queue.push(m);
                    }
                }
            } else {
                self.boundary.push(reduced);
            }
        }
    }

    fn top_degree_saturated(&self) -> bool {
        let d = self.index.max_degree();
        self.index.degree_range(d).all(|c| self.echelon.is_pivot(c))
    }

    fn grow(&mut self) {
        let d = self.index.max_degree() + 1;
        self.index.extend_to(d);
        let owed = std::mem::take(&mut self.boundary);
        let mut queue = Vec::new();
        for row in owed {
            let p = OperatorPolynomial::from_row(&self.index, &row);
            for i in 0..self.n {
                let q = &p * &OperatorPolynomial::var(self.n, i);
                queue.push(q.to_row(&self.index).expect("degree within the index"));
            }
        }
        self.absorb(queue, false);
    }
}

impl FiniteIdeal {
    /// Ideal generated by `generators`, certified by truncated closure with
    /// truncation degree at most `cap`.
    pub fn new(n: usize, generators: Vec<OperatorPolynomial>, cap: u32) -> Result<Self, IdealError> {
        check_vars(n, &generators)?;
        let start = generators.iter().filter_map(Polynomial::degree).max().unwrap_or(0).max(1);
        if start > cap {
            return Err(IdealError::LikelyInfiniteColength { cap });
        }
        let mut cl = Closure::new(n, start);
        let rows = |cl: &Closure, d: u32| -> Vec<SparseRow> {
            generators
                .iter()
                .filter(|g| g.degree() == Some(d) || (d == start && g.degree().is_some_and(|x| x < d)))
                .map(|g| g.to_row(&cl.index).expect("degree within the index"))
                .collect()
        };
        let first = rows(&cl, start);
        cl.absorb(first, false);
        loop {
            let d = cl.index.max_degree();
            if cl.top_degree_saturated() {
                let ev = ReductionEvaluator { n, index: &cl.index, echelon: &cl.echelon, drop_from: None };
                match QuotientAlgebra::from_evaluator(&ev) {
                    Ok(algebra) => {
                        return Ok(Self { n, generators, truncation_degree: d, power_certificate: None, algebra });
                    }
                    Err(CommutingError::NotCommuting(..)) => {}
                    Err(e) => return Err(e.into()),
                }
            }
            if d >= cap {
                return Err(IdealError::LikelyInfiniteColength { cap });
            }
            cl.grow();
            let more = rows(&cl, d + 1);
            cl.absorb(more, false);
        }
    }

    /// `(generators) + m^r`, computed exactly modulo `m^r`.
    pub fn with_power_of_max_ideal(n: usize, generators: Vec<OperatorPolynomial>, r: u32) -> Result<Self, IdealError> {
        check_vars(n, &generators)?;
        if r == 0 {
            return Ok(Self::from_algebra(QuotientAlgebra::zero_ring(n)).with_generators(generators, Some(0)));
        }
        let mut cl = Closure::new(n, r - 1);
        let rows: Vec<SparseRow> = generators
            .iter()
            .map(|g| g.truncate(r - 1).to_row(&cl.index).expect("truncated to the index"))
            .filter(|row| !row.is_empty())
            .collect();
        cl.absorb(rows, true);
        let ev = ReductionEvaluator { n, index: &cl.index, echelon: &cl.echelon, drop_from: Some(r) };
        let algebra = QuotientAlgebra::from_evaluator(&ev)?;
        Ok(Self { n, generators, truncation_degree: r, power_certificate: Some(r), algebra })
    }

    /// The ideal whose quotient is `algebra`, generated by border polynomials.
    #[must_use]
    pub fn from_algebra(algebra: QuotientAlgebra) -> Self {
        let n = algebra.nvars();
        let truncation_degree = algebra.basis().iter().map(Monomial::degree).max().map_or(0, |x| x + 1);
        Self { n, generators: algebra.border_generators(), truncation_degree, power_certificate: None, algebra }
    }

    fn with_generators(mut self, generators: Vec<OperatorPolynomial>, cert: Option<u32>) -> Self {
        self.generators = generators;
        self.power_certificate = cert;
        self
    }

    /// `(a_1 - p_1, ..., a_n - p_n)`.
    #[must_use]
    pub fn point(p: &[Scalar]) -> Self {
        Self::from_algebra(QuotientAlgebra::point(p))
    }

    /// The maximal ideal at the origin.
    #[must_use]
    pub fn maximal(n: usize) -> Self {
        Self::point(&vec![Scalar::zero(); n])
    }

    /// `R` itself.
    #[must_use]
    pub fn unit(n: usize) -> Self {
        Self::from_algebra(QuotientAlgebra::zero_ring(n))
    }

    /// Builds an ideal from its JSON description.
    pub fn from_spec(spec: &IdealSpec, cap: u32) -> Result<Self, IdealError> {
        let gens = spec.generators.iter().map(|g| parse_polynomial(g, spec.vars)).collect::<Result<Vec<_>, _>>()?;
        let base = match spec.add_power_of_max_ideal {
            Some(r) => Self::with_power_of_max_ideal(spec.vars, gens, r)?,
            None => Self::new(spec.vars, gens, cap)?,
        };
        match &spec.support_shift {
            Some(shift) => {
                let p = shift.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>()?;
                base.translate(&p)
            }
            None => Ok(base),
        }
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Generators as given, or border generators for derived ideals.
    #[must_use]
    pub fn generators(&self) -> &[OperatorPolynomial] {
        &self.generators
    }

    /// A generating set read off the quotient algebra.
    #[must_use]
    pub fn border_generators(&self) -> Vec<OperatorPolynomial> {
        self.algebra.border_generators()
    }

    #[must_use]
    pub fn truncation_degree(&self) -> u32 {
        self.truncation_degree
    }

    /// `r` with `m^r ⊆ I`, if the ideal was built with that certificate.
    #[must_use]
    pub fn power_certificate(&self) -> Option<u32> {
        self.power_certificate
    }

    #[must_use]
    pub fn algebra(&self) -> &QuotientAlgebra {
        &self.algebra
    }

    /// `dim R/I`.
    #[must_use]
    pub fn colength(&self) -> usize {
        self.algebra.dim()
    }

    /// Standard monomials of the quotient.
    #[must_use]
    pub fn standard_monomials(&self) -> &[Monomial] {
        self.algebra.basis()
    }

    pub fn contains(&self, f: &OperatorPolynomial) -> Result<bool, IdealError> {
        Ok(self.algebra.contains(f)?)
    }

    /// `J ⊆ I`.
    pub fn contains_ideal(&self, other: &Self) -> Result<bool, IdealError> {
        for g in other.border_generators() {
            if !self.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equal colength plus one inclusion.
    pub fn equals(&self, other: &Self) -> Result<bool, IdealError> {
        if self.n != other.n {
            return Err(IdealError::LengthMismatch { expected: self.n, found: other.n });
        }
        Ok(self.colength() == other.colength() && self.contains_ideal(other)?)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, IdealError> {
        if self.n != other.n {
            return Err(IdealError::LengthMismatch { expected: self.n, found: other.n });
        }
        Ok(Self::from_algebra(self.algebra.intersection(&other.algebra)?))
    }

    /// Substitutes `a_i -> a_i - p_i`, moving the support by `p`.
    pub fn translate(&self, p: &[Scalar]) -> Result<Self, IdealError> {
        if p.len() != self.n {
            return Err(IdealError::LengthMismatch { expected: self.n, found: p.len() });
        }
        Ok(Self::from_algebra(self.algebra.shifted(p)?))
    }

    /// True iff every variable acts nilpotently, i.e. `I` is primary to the
    /// maximal ideal at the origin (or is the unit ideal).
    #[must_use]
    pub fn is_local(&self) -> bool {
        self.algebra.tuple().is_none_or(|t| t.require_nilpotent().is_ok())
    }

    /// Smallest `r` with `m^r ⊆ I`, for a local ideal.
    pub fn nilpotency_index(&self) -> Result<u32, IdealError> {
        if !self.is_local() {
            return Err(IdealError::NotLocal);
        }
        let len = self.local_hilbert_function()?.values().len();
        Ok(u32::try_from(len).expect("small colength"))
    }

    /// Hilbert function of the associated graded algebra,
    /// `H(k) = dim m^k A / m^(k+1) A`.
    pub fn local_hilbert_function(&self) -> Result<GradedProfile, IdealError> {
        if !self.is_local() {
            return Err(IdealError::NotLocal);
        }
        let d = self.colength();
        let mats = self.algebra.matrices();
        let mut dims = vec![d];
        let mut u = Subspace::full(d);
        while !u.is_zero() {
            let mut next = Subspace::zero(d);
            for m in &mats {
                next = next.sum(&u.image(m)?)?;
            }
            u = next;
            dims.push(u.dim());
        }
        Ok(GradedProfile::new(dims.windows(2).map(|w| w[0] - w[1]).collect()))
    }

    /// Initial ideal with respect to `w`: the span of the terms of maximal
    /// `w`-weight of all elements. All-negative weights need a local ideal;
    /// mixed signs are not supported.
    pub fn initial_ideal(&self, w: &[i64]) -> Result<Self, IdealError> {
        if w.len() != self.n {
            return Err(IdealError::LengthMismatch { expected: self.n, found: w.len() });
        }
        if w.iter().all(|&x| x == 0) || self.colength() == 0 {
            return Ok(self.clone());
        }
        if w.iter().all(|&x| x > 0) {
            self.initial_positive(w)
        } else if w.iter().all(|&x| x < 0) {
            self.initial_negative(w)
        } else {
            Err(IdealError::MixedWeights)
        }
    }

    fn initial_positive(&self, w: &[i64]) -> Result<Self, IdealError> {
        let d = self.colength();
        let mut sweep = WeightSweep::new(&self.algebra, w);
        let mut c = 0i64;
        loop {
            for u in monomials_of_weight(w, c) {
                sweep.visit(u);
            }
            if sweep.rank() == d {
                break;
            }
            c += 1;
        }
        let wmax = *w.iter().max().expect("nonempty");
        let mut gens = sweep.generators;
        for k in c + 1..=c + wmax {
            gens.extend(monomials_of_weight(w, k).into_iter().map(OperatorPolynomial::monomial));
        }
        let r = u32::try_from(c + 1).expect("small weights");
        Self::with_power_of_max_ideal(self.n, gens, r)
    }

    fn initial_negative(&self, w: &[i64]) -> Result<Self, IdealError> {
        let r = self.nilpotency_index()?;
        let index = MonomialIndex::new(self.n, r.saturating_sub(1));
        let mut order: Vec<Monomial> = index.monomials().to_vec();
        order.sort_by(|a, b| a.weight(w).cmp(&b.weight(w)).then_with(|| a.cmp(b)));
        let mut sweep = WeightSweep::new(&self.algebra, w);
        for u in order {
            sweep.visit(u);
        }
        Self::with_power_of_max_ideal(self.n, sweep.generators, r)
    }
}

/// Visits monomials in ascending weight order, keeping those with images
/// independent of the earlier ones and recording the initial forms of the
/// relations of the others.
struct WeightSweep<'a> {
    w: &'a [i64],
    n: usize,
    actions: Vec<crate::algebra::SparseAction>,
    memo: HashMap<Monomial, SparseRow>,
    tracked: TrackedEchelon,
    standard: Vec<Monomial>,
    generators: Vec<OperatorPolynomial>,
}

impl<'a> WeightSweep<'a> {
    fn new(alg: &QuotientAlgebra, w: &'a [i64]) -> Self {
        let n = alg.nvars();
        let mut memo = HashMap::new();
        memo.insert(Monomial::one(n), vec![(0, Scalar::one())]);
        Self {
            w,
            n,
            actions: alg.actions(),
            memo,
            tracked: TrackedEchelon::new(alg.dim()),
            standard: Vec::new(),
            generators: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.tracked.rank()
    }

    fn visit(&mut self, u: Monomial) {
        let v = monomial_image(&mut self.memo, &self.actions, &u);
        match self.tracked.express(&v) {
            Some(coeffs) => {
                let top = u.weight(self.w);
                let tail = self
                    .standard
                    .iter()
                    .zip(coeffs)
                    .filter(|(b, c)| !c.is_zero() && b.weight(self.w) == top)
                    .map(|(b, c)| (b.clone(), -c));
                let f = OperatorPolynomial::from_terms(self.n, std::iter::once((u, Scalar::one())).chain(tail));
                self.generators.push(f);
            }
            None => {
                self.tracked.insert(&v);
                self.standard.push(u);
            }
        }
    }
}

/// Monomials `u` with `sum w_i u_i = c`, ascending, for positive weights.
#[must_use]
pub fn monomials_of_weight(w: &[i64], c: i64) -> Vec<Monomial> {
    fn rec(w: &[i64], i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while i64::from(e) * w[i] <= left {
            cur[i] = e;
            rec(w, i + 1, left - i64::from(e) * w[i], cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if c >= 0 && w.iter().all(|&x| x > 0) {
        rec(w, 0, c, &mut vec![0; w.len()], &mut out);
    }
    out.sort();
    out
}

fn check_vars(n: usize, gens: &[OperatorPolynomial]) -> Result<(), IdealError> {
    match gens.iter().find(|g| g.nvars() != n) {
        Some(g) => Err(PolyError::VarCountMismatch { expected: n, found: g.nvars() }.into()),
        None => Ok(()),
    }
}

/// JSON description of an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSpec {
    pub vars: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add_power_of_max_ideal: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support_shift: Option<Vec<String>>,
}

/// Serializable summary of an ideal.
#[derive(Clone, Debug, Serialize)]
pub struct IdealSummary {
    pub vars: usize,
    pub colength: usize,
    pub generators: Vec<String>,
    pub standard_monomials: Vec<String>,
}

impl From<&FiniteIdeal> for IdealSummary {
    fn from(i: &FiniteIdeal) -> Self {
        Self {
            vars: i.n,
            colength: i.colength(),
            generators: i.border_generators().iter().map(ToString::to_string).collect(),
            standard_monomials: i.standard_monomials().iter().map(|m| m.render('a')).collect(),
        }
    }
}

/// One generator `base + sum_j p_j tail_j` of a [`LinearFamily`], with its
/// own block of parameters `p_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyGeneratorSpec {
    pub base: String,
    #[serde(default)]
    pub tails: Vec<String>,
}

/// JSON description of a [`LinearFamily`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFamilySpec {
    pub vars: usize,
    pub power_of_max_ideal: u32,
    pub generators: Vec<FamilyGeneratorSpec>,
}

/// Ideals `J(p) = (g_k + sum_j p_kj t_kj : k) + m^r` depending linearly on
/// parameters, around the base ideal `J(0)`.
#[derive(Clone, Debug)]
pub struct LinearFamily {
    n: usize,
    power: u32,
    bases: Vec<OperatorPolynomial>,
    tails: Vec<Vec<OperatorPolynomial>>,
}

impl LinearFamily {
    /// Family with generators `bases[k] + sum_j p_kj tails[k][j]` plus `m^power`.
    pub fn new(
        n: usize,
        power: u32,
        bases: Vec<OperatorPolynomial>,
        tails: Vec<Vec<OperatorPolynomial>>,
    ) -> Result<Self, IdealError> {
        if tails.len() != bases.len() {
            return Err(IdealError::LengthMismatch { expected: bases.len(), found: tails.len() });
        }
        check_vars(n, &bases)?;
        for t in &tails {
            check_vars(n, t)?;
        }
        Ok(Self { n, power, bases, tails })
    }

    /// Parses a [`LinearFamilySpec`].
    pub fn from_spec(spec: &LinearFamilySpec) -> Result<Self, IdealError> {
        let n = spec.vars;
        let mut bases = Vec::new();
        let mut tails = Vec::new();
        for g in &spec.generators {
            bases.push(parse_polynomial(&g.base, n)?);
            tails.push(g.tails.iter().map(|t| parse_polynomial(t, n)).collect::<Result<Vec<_>, _>>()?);
        }
        Self::new(n, spec.power_of_max_ideal, bases, tails)
    }

    /// Total number of parameters.
    #[must_use]
    pub fn parameter_count(&self) -> usize {
        self.tails.iter().map(Vec::len).sum()
    }

    /// The member at `p = 0`.
    pub fn base_ideal(&self) -> Result<FiniteIdeal, IdealError> {
        FiniteIdeal::with_power_of_max_ideal(self.n, self.bases.clone(), self.power)
    }

    /// The member at the given parameter values.
    pub fn member(&self, params: &[Scalar]) -> Result<FiniteIdeal, IdealError> {
        if params.len() != self.parameter_count() {
            return Err(IdealError::LengthMismatch { expected: self.parameter_count(), found: params.len() });
        }
        let mut it = params.iter();
        let mut gens = Vec::with_capacity(self.bases.len());
        for (b, ts) in self.bases.iter().zip(&self.tails) {
            let mut g = b.clone();
            for t in ts {
                g = g.checked_add(&t.scale(it.next().expect("length checked")))?;
            }
            gens.push(g);
        }
        FiniteIdeal::with_power_of_max_ideal(self.n, gens, self.power)
    }

    /// Rank of the linear conditions on `p` for the family to keep the
    /// colength of `J(0)` to first order.
    ///
    /// Every relation `sum_i u_i g_{k_i} = 0 mod m^r` with monomial
    /// multipliers `u_i` of degree below `r` must lift: the first-order term
    /// `sum_i u_i (sum_j p_{k_i j} t_{k_i j})` has to vanish in `R/J(0)`.
    /// Each coordinate of `R/J(0)` yields one linear form in `p`.
    pub fn first_order_constraint_rank(&self) -> Result<usize, IdealError> {
        let base = self.base_ideal()?;
        let alg = base.algebra();
        let dim = alg.dim();
        let nparams = self.parameter_count();
        let index = MonomialIndex::new(self.n, self.power.saturating_sub(1));
        let mut offset = 0;
        let mut relations = TrackedEchelon::new(index.len());
        // first-order term of each accepted product, as a `dim x nparams` sparse table
        let mut accepted: Vec<Vec<(usize, Vec<Scalar>)>> = Vec::new();
        let mut constraints = SparseEchelon::new(nparams);
        for (b, ts) in self.bases.iter().zip(&self.tails) {
            for u in index.monomials() {
                let first = b.mul_monomial(u).truncate(self.power - 1).to_row(&index).expect("degree is truncated");
                let second = ts
                    .iter()
                    .enumerate()
                    .map(|(j, t)| Ok((offset + j, alg.normal_form(&t.mul_monomial(u))?)))
                    .collect::<Result<Vec<_>, PolyError>>()?;
                if let Some(coeffs) = relations.express(&first) {
                    let mut table = vec![vec![Scalar::zero(); nparams]; dim];
                    for (p, v) in &second {
                        for (row, x) in table.iter_mut().zip(v) {
                            row[*p] += x;
                        }
                    }
                    for (c, prev) in coeffs.iter().zip(&accepted) {
                        if c.is_zero() {
                            continue;
                        }
                        for (p, v) in prev {
                            for (row, x) in table.iter_mut().zip(v) {
                                row[*p] -= c * x;
                            }
                        }
                    }
                    for row in table {
                        let sparse: SparseRow = row.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                        constraints.insert(&sparse);
                    }
                } else {
                    relations.insert(&first);
                    accepted.push(second);
                }
            }
            offset += ts.len();
        }
        Ok(constraints.rank())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use crate::poly::parse_list;

    fn ideal(s: &str, n: usize) -> FiniteIdeal {
        FiniteIdeal::new(n, parse_list(s, n).unwrap(), DEFAULT_TRUNCATION_CAP).unwrap()
    }

    fn op(s: &str, n: usize) -> OperatorPolynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn colengths() {
        assert_eq!(ideal("a1, a2, a3", 3).colength(), 1);
        assert_eq!(ideal("a1^3, a2", 2).colength(), 3);
        assert_eq!(ideal("a1^2 - a2^2, a1*a2", 2).colength(), 4);
        assert_eq!(ideal("a1 - 1, a2 - 2", 2).colength(), 1);
        assert_eq!(ideal("a1^2 - a1, a2^2 - a2", 2).colength(), 4);
        assert_eq!(ideal("1 + a1", 1).colength(), 1);
        assert_eq!(ideal("a1*a2 - 1, a1 - a2", 2).colength(), 2);
    }

    #[test]
    fn infinite_colength_is_reported() {
        let r = FiniteIdeal::new(2, parse_list("a1", 2).unwrap(), 6);
        assert!(matches!(r, Err(IdealError::LikelyInfiniteColength { cap: 6 })));
        let e = FiniteIdeal::with_power_of_max_ideal(2, parse_list("a1", 2).unwrap(), 5).unwrap();
        assert_eq!(e.colength(), 5);
        assert!(!e.contains(&op("a2", 2)).unwrap());
    }

    #[test]
    fn membership_and_equality() {
        let m2 = FiniteIdeal::with_power_of_max_ideal(4, vec![], 2).unwrap();
        assert!(m2.contains(&op("a1*a2", 4)).unwrap());
        assert_eq!(m2.local_hilbert_function().unwrap().values(), &[1, 4]);
        let a = ideal("a1^2, a2", 2);
        let b = FiniteIdeal::with_power_of_max_ideal(2, parse_list("a2", 2).unwrap(), 2).unwrap();
        assert!(a.equals(&b).unwrap());
        assert!(!a.equals(&ideal("a1, a2^2", 2)).unwrap());
    }

    #[test]
    fn intersections_and_translations() {
        let i = ideal("a1^2, a2", 2);
        let u = FiniteIdeal::unit(2);
        assert!(i.intersect(&u).unwrap().equals(&i).unwrap());
        let p = FiniteIdeal::point(&[int(1), int(2)]);
        let both = i.intersect(&p).unwrap();
        assert_eq!(both.colength(), 3);
        let moved = i.translate(&[int(3), int(-1)]).unwrap();
        assert!(moved.contains(&op("(a1 - 3)^2", 2)).unwrap());
        assert!(moved.contains(&op("a2 + 1", 2)).unwrap());
        assert!(moved.translate(&[int(-3), int(1)]).unwrap().equals(&i).unwrap());
        assert!(!moved.is_local());
        assert!(moved.local_hilbert_function().is_err());
    }

    #[test]
    fn initial_ideals() {
        let i = FiniteIdeal::with_power_of_max_ideal(2, parse_list("a1 + a1^2", 2).unwrap(), 3).unwrap();
        let lo = i.initial_ideal(&[-1, -1]).unwrap();
        assert!(lo.contains(&op("a1", 2)).unwrap());
        assert_eq!(lo.colength(), i.colength());
        let mono = ideal("a1^2, a1*a2, a2^3", 2);
        assert!(mono.initial_ideal(&[-1, -1]).unwrap().equals(&mono).unwrap());
        assert!(mono.initial_ideal(&[1, 2]).unwrap().equals(&mono).unwrap());
        // two points degenerate to a double point along the line through them
        let two = FiniteIdeal::point(&[int(0), int(0)]).intersect(&FiniteIdeal::point(&[int(1), int(1)])).unwrap();
        let top = two.initial_ideal(&[1, 1]).unwrap();
        assert_eq!(top.colength(), 2);
        assert!(top.contains(&op("a1 - a2", 2)).unwrap());
        assert!(matches!(two.initial_ideal(&[1, -1]), Err(IdealError::MixedWeights)));
    }

    #[test]
    fn nilpotency_index_sees_past_the_standard_basis() {
        let gens = parse_list("a2^2 - a1^3, a1*a2", 2).unwrap();
        let i = FiniteIdeal::with_power_of_max_ideal(2, gens, 5).unwrap();
        assert_eq!(i.nilpotency_index().unwrap(), 4);
        let lo = i.initial_ideal(&[-1, -1]).unwrap();
        assert!(lo.contains(&op("a2^2", 2)).unwrap());
        assert!(!lo.contains(&op("a1^3", 2)).unwrap());
    }

    #[test]
    fn weight_monomials() {
        assert_eq!(monomials_of_weight(&[1, 2], 2).len(), 2);
        assert_eq!(monomials_of_weight(&[1, 1, 1], 2).len(), 6);
    }

    fn theta_family(first: &str, tails: [&str; 3], zeta: &str) -> LinearFamily {
        let quadrics = ["a3*a1", "a4*a1", "a3*a2", "a4*a2", "a3^2", "a4^2", "a3*a4"];
        let mut generators: Vec<FamilyGeneratorSpec> = std::iter::once(first)
            .chain(quadrics)
            .map(|b| FamilyGeneratorSpec { base: b.into(), tails: tails.iter().map(|t| (*t).to_string()).collect() })
            .collect();
        generators.push(FamilyGeneratorSpec { base: zeta.into(), tails: Vec::new() });
        LinearFamily::from_spec(&LinearFamilySpec { vars: 4, power_of_max_ideal: 5, generators }).unwrap()
    }

    #[test]
    fn theta_family_constraint_ranks() {
        let cases = [
            ("a2^2", ["a1^3", "a1^2*a2", "a1^4"], "a1^3*a2", 5),
            ("a1*a2", ["a1^3", "a2^3", "a1^4"], "a2^4", 5),
            ("a2^2", ["a1^3", "a1^2*a2", "a1^3*a2"], "a1^4", 10),
            ("a1*a2", ["a1^3", "a2^3", "a1^4"], "a1^4 - a2^4", 10),
        ];
        for (first, tails, zeta, rank) in cases {
            let fam = theta_family(first, tails, zeta);
            assert_eq!(fam.parameter_count(), 24);
            assert_eq!(fam.base_ideal().unwrap().colength(), 10);
            assert_eq!(fam.first_order_constraint_rank().unwrap(), rank, "{first} / {zeta}");
        }
    }

    #[test]
    fn family_members_vary_with_parameters() {
        let fam = theta_family("a2^2", ["a1^3", "a1^2*a2", "a1^3*a2"], "a1^4");
        let zero = vec![int(0); 24];
        assert!(fam.member(&zero).unwrap().equals(&fam.base_ideal().unwrap()).unwrap());
        assert!(fam.member(&zero[1..]).is_err());
    }
}
