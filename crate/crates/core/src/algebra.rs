//! Finite quotients `R/I` given by a monomial basis and multiplication
//! matrices.
//!
//! Any linear model of `R/I` (a start vector plus commuting linear actions of
//! the variables, with `I` the annihilator of the start vector) is turned into
//! this canonical form by a greedy search: monomials are visited in ascending
//! degrevlex order and kept when their images are independent of the images
//! of all smaller monomials. The kept monomials form an order ideal, the
//! standard monomials of `I`.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::commuting::{CommutingError, CommutingTuple};
use crate::exactalg::{Matrix, Scalar, SparseRow, TrackedEchelon};
use crate::poly::{Monomial, OperatorPolynomial, PolyError};

/// A linear model of a cyclic `R`-module.
pub trait Evaluator {
    fn nvars(&self) -> usize;
    /// Image of `1`.
    fn start(&self) -> SparseRow;
    /// Action of the variable `a_i`.
    fn act(&self, i: usize, v: &SparseRow) -> SparseRow;
}

/// `R/I` with its standard monomial basis and multiplication matrices.
///
/// Column `k` of matrix `i` holds the coordinates of `a_i * basis[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientAlgebra {
    n: usize,
    #[serde(serialize_with = "ser_monomials")]
    basis: Vec<Monomial>,
    tuple: Option<CommutingTuple>,
}

fn ser_monomials<S: serde::Serializer>(ms: &[Monomial], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(ms.len()))?;
    for m in ms {
        seq.serialize_element(&m.render('a'))?;
    }
    seq.end()
}

/// Sparse view of a matrix acting on column vectors.
#[derive(Clone, Debug)]
pub struct SparseAction {
    columns: Vec<SparseRow>,
}

impl SparseAction {
    #[must_use]
    pub fn new(m: &Matrix) -> Self {
        let columns = (0..m.cols())
            .map(|c| (0..m.rows()).filter(|&r| !m.get(r, c).is_zero()).map(|r| (r, m.get(r, c).clone())).collect())
            .collect();
        Self { columns }
    }

    #[must_use]
    pub fn apply(&self, v: &SparseRow) -> SparseRow {
        let mut acc: std::collections::BTreeMap<usize, Scalar> = std::collections::BTreeMap::new();
        for (c, x) in v {
            for (r, a) in &self.columns[*c] {
                *acc.entry(*r).or_insert_with(Scalar::zero) += x * a;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }
}

/// Commuting matrices acting on `Q^d` with a chosen start vector; the
/// annihilator of the start vector is the ideal.
pub struct MatrixEvaluator {
    actions: Vec<SparseAction>,
    start: SparseRow,
}

impl MatrixEvaluator {
    #[must_use]
    pub fn new(matrices: &[Matrix], start: &[Scalar]) -> Self {
        Self {
            actions: matrices.iter().map(SparseAction::new).collect(),
            start: start.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }
}

impl Evaluator for MatrixEvaluator {
    fn nvars(&self) -> usize {
        self.actions.len()
    }
    fn start(&self) -> SparseRow {
        self.start.clone()
    }
    fn act(&self, i: usize, v: &SparseRow) -> SparseRow {
        self.actions[i].apply(v)
    }
}

/// Dense vector from a sparse one.
#[must_use]
pub fn densify(v: &SparseRow, len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (c, x) in v {
        out[*c] = x.clone();
    }
    out
}

fn sparsify(v: &[Scalar]) -> SparseRow {
    v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

impl QuotientAlgebra {
    /// Canonical form of the cyclic module modelled by `ev`.
    ///
    /// Fails with [`CommutingError::NotCommuting`] if the resulting matrices
    /// do not commute, which signals that `ev` was not a genuine module.
    pub fn from_evaluator(ev: &impl Evaluator) -> Result<Self, CommutingError> {
        let n = ev.nvars();
        let start = ev.start();
        if start.is_empty() {
            return Ok(Self { n, basis: Vec::new(), tuple: None });
        }
        let mut tracked = TrackedEchelon::new(0);
        tracked.insert(&start);
        let mut basis = vec![Monomial::one(n)];
        let mut vectors = vec![start];
        let mut last_degree = vec![0usize];
        while !last_degree.is_empty() {
            let mut candidates: Vec<(Monomial, usize, usize)> = Vec::new();
            let mut seen = BTreeSet::new();
            for &b in &last_degree {
                for i in 0..n {
                    let m = basis[b].times_var(i);
                    if seen.insert(m.clone()) {
                        candidates.push((m, i, b));
                    }
                }
            }
            candidates.sort_by(|x, y| x.0.cmp(&y.0));
            last_degree.clear();
            for (m, i, b) in candidates {
                let v = ev.act(i, &vectors[b]);
                if tracked.insert(&v).is_some() {
                    last_degree.push(basis.len());
                    basis.push(m);
                    vectors.push(v);
                }
            }
        }
        let d = basis.len();
        let mut mats = vec![Matrix::zeros(d, d); n];
        for (k, v) in vectors.iter().enumerate() {
            for (i, mat) in mats.iter_mut().enumerate() {
                let w = ev.act(i, v);
                let coords = tracked.express(&w).expect("the span of the module is closed");
                for (r, x) in coords.into_iter().enumerate() {
                    if !x.is_zero() {
                        mat.set(r, k, x);
                    }
                }
            }
        }
        let tuple = if n == 0 { None } else { Some(CommutingTuple::new(mats)?) };
        Ok(Self { n, basis, tuple })
    }

    /// `R/Ann(v)` for commuting matrices and a vector `v`.
    pub fn from_matrices(matrices: &[Matrix], v: &[Scalar]) -> Result<Self, CommutingError> {
        Self::from_evaluator(&MatrixEvaluator::new(matrices, v))
    }

    /// `R/(a_1 - p_1, ..., a_n - p_n)`.
    #[must_use]
    pub fn point(p: &[Scalar]) -> Self {
        let mats = p.iter().map(|x| Matrix::from_fn(1, 1, |_, _| x.clone())).collect::<Vec<_>>();
        let tuple = (!mats.is_empty()).then(|| CommutingTuple::new(mats).expect("1x1 matrices commute"));
        Self { n: p.len(), basis: vec![Monomial::one(p.len())], tuple }
    }

    /// The zero ring `R/R`.
    #[must_use]
    pub fn zero_ring(n: usize) -> Self {
        Self { n, basis: Vec::new(), tuple: None }
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Vector space dimension, the colength of the ideal.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Standard monomials, ascending; the first one is `1` unless `dim = 0`.
    #[must_use]
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Multiplication matrices; `None` when `dim = 0` or `n = 0`.
    #[must_use]
    pub fn tuple(&self) -> Option<&CommutingTuple> {
        self.tuple.as_ref()
    }

    /// Multiplication matrices as a list, with `0 x 0` matrices when `dim = 0`.
    #[must_use]
    pub fn matrices(&self) -> Vec<Matrix> {
        match &self.tuple {
            Some(t) => t.matrices().to_vec(),
            None => vec![Matrix::zeros(self.dim(), self.dim()); self.n],
        }
    }

    /// Coordinates of `1`.
    #[must_use]
    pub fn one(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        if let Some(x) = v.first_mut() {
            *x = Scalar::one();
        }
        v
    }

    /// Sparse actions of the variables, for repeated evaluation.
    #[must_use]
    pub fn actions(&self) -> Vec<SparseAction> {
        self.matrices().iter().map(SparseAction::new).collect()
    }

    /// Coordinates of the class of `f`.
    pub fn normal_form(&self, f: &OperatorPolynomial) -> Result<Vec<Scalar>, PolyError> {
        if f.nvars() != self.n {
            return Err(PolyError::VarCountMismatch { expected: self.n, found: f.nvars() });
        }
        Ok(densify(&self.normal_form_with(&self.actions(), f), self.dim()))
    }

    fn normal_form_with(&self, actions: &[SparseAction], f: &OperatorPolynomial) -> SparseRow {
        if self.dim() == 0 {
            return Vec::new();
        }
        let mut memo: HashMap<Monomial, SparseRow> = HashMap::new();
        memo.insert(Monomial::one(self.n), vec![(0, Scalar::one())]);
        let mut acc = vec![Scalar::zero(); self.dim()];
        for (m, c) in f.terms() {
            let v = monomial_image(&mut memo, actions, m);
            for (k, x) in v {
                acc[k] += c * x;
            }
        }
        sparsify(&acc)
    }

    /// True iff `f` lies in the ideal.
    pub fn contains(&self, f: &OperatorPolynomial) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.iter().all(Zero::is_zero))
    }

    /// Polynomial with the given coordinates in the standard basis.
    #[must_use]
    pub fn lift(&self, coords: &[Scalar]) -> OperatorPolynomial {
        OperatorPolynomial::from_terms(self.n, self.basis.iter().cloned().zip(coords.iter().cloned()))
    }

    /// Border generators `a_i b - NF(a_i b)` for every standard `b` with
    /// `a_i b` not standard; they generate the ideal. The unit ideal gives `[1]`.
    #[must_use]
    pub fn border_generators(&self) -> Vec<OperatorPolynomial> {
        if self.dim() == 0 {
            return vec![OperatorPolynomial::one(self.n)];
        }
        let standard: BTreeSet<&Monomial> = self.basis.iter().collect();
        let mats = self.matrices();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (k, b) in self.basis.iter().enumerate() {
            for (i, mat) in mats.iter().enumerate() {
                let m = b.times_var(i);
                if standard.contains(&m) || !seen.insert(m.clone()) {
                    continue;
                }
                let nf = self.lift(&mat.column(k));
                out.push(&OperatorPolynomial::monomial(m) - &nf);
            }
        }
        out
    }

    /// Re-runs the greedy search on the module with actions `M_i + shift_i`,
    /// which models the ideal translated so that its support moves by `shift`.
    pub fn shifted(&self, shift: &[Scalar]) -> Result<Self, CommutingError> {
        if self.dim() == 0 {
            return Ok(self.clone());
        }
        let d = self.dim();
        let mats: Vec<Matrix> =
            self.matrices().iter().zip(shift).map(|(m, s)| m + &Matrix::identity(d).scale(s)).collect();
        Self::from_matrices(&mats, &self.one())
    }

    /// `R/(I cap J)` from the diagonal module `R/I + R/J`.
    pub fn intersection(&self, other: &Self) -> Result<Self, CommutingError> {
        let (a, b) = (self.dim(), other.dim());
        if a == 0 {
            return Ok(other.clone());
        }
        if b == 0 {
            return Ok(self.clone());
        }
        let mats: Vec<Matrix> = self
            .matrices()
            .into_iter()
            .zip(other.matrices())
            .map(|(x, y)| Matrix::from_blocks(&[a, b], &[((0, 0), x), ((1, 1), y)]).expect("square blocks"))
            .collect();
        let mut v = self.one();
        v.extend(other.one());
        Self::from_matrices(&mats, &v)
    }
}

/// Image of a monomial under `actions`, memoized over divisors.
pub(crate) fn monomial_image(
    memo: &mut HashMap<Monomial, SparseRow>,
    actions: &[SparseAction],
    m: &Monomial,
) -> SparseRow {
    if let Some(v) = memo.get(m) {
        return v.clone();
    }
    let i = m.exps().iter().position(|&e| e > 0).expect("1 is memoized");
    let mut e = m.exps().to_vec();
    e[i] -= 1;
    let prev = monomial_image(memo, actions, &Monomial::new(e));
    let v = actions[i].apply(&prev);
    memo.insert(m.clone(), v.clone());
    v
}
