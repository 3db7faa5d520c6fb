//! Polynomials in the operator ring `R = Q[a1..an]` and the dual space
//! `S = Q[x1..xn]`, with `R` acting on `S` by contraction.
//!
//! Both sides share one representation: plain monomial coefficients in a
//! sorted map. Divided powers `x^(k) = x^k / k!` only appear in the text
//! grammar. Variable indices are 0-based in the API and 1-based in text.

mod monomial;
mod parse;

pub use monomial::{monomials_of_degree, Monomial, MonomialIndex};
pub use parse::{max_variable_index, parse_list, parse_polynomial};

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{factorial, falling_factorial, format_scalar, LinalgError, Matrix, Scalar, SparseRow};

/// Failures of polynomial construction, parsing and contraction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VarCountMismatch { expected: usize, found: usize },
    #[error("variable `{name}` is out of range for {n} variables")]
    VariableOutOfRange { name: String, n: usize },
    #[error("variable `{name}` belongs to the other ring (expected prefix `{expected}`)")]
    WrongRole { name: String, expected: char },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Marks which ring a polynomial lives in.
pub trait Role: Clone + Copy + fmt::Debug + PartialEq + Eq + Hash + Default + Send + Sync + 'static {
    /// Variable prefix in the text grammar.
    const PREFIX: char;
}

/// The dual space `S`, variables `x1..xn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Dual;

/// The operator ring `R`, variables `a1..an`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Operator;

impl Role for Dual {
    const PREFIX: char = 'x';
}

impl Role for Operator {
    const PREFIX: char = 'a';
}

/// Polynomial with exact rational coefficients; no zero coefficient is stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<R: Role> {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
    role: PhantomData<R>,
}

/// Element of the dual space `S`.
pub type DualPolynomial = Polynomial<Dual>;
/// Element of the operator ring `R`.
pub type OperatorPolynomial = Polynomial<Operator>;

impl<R: Role> Polynomial<R> {
    #[must_use]
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new(), role: PhantomData }
    }

    #[must_use]
    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    #[must_use]
    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(n), c)
    }

    /// The variable with 0-based index `i`.
    #[must_use]
    pub fn var(n: usize, i: usize) -> Self {
        Self::term(Monomial::var(n, i), Scalar::one())
    }

    #[must_use]
    pub fn term(m: Monomial, c: Scalar) -> Self {
        let n = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { n, terms, role: PhantomData }
    }

    #[must_use]
    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Scalar::one())
    }

    /// Sums the given terms, dropping zeros.
    #[must_use]
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Polynomial whose coefficient vector relative to `index` is `row`.
    #[must_use]
    pub fn from_row(index: &MonomialIndex, row: &[(usize, Scalar)]) -> Self {
        Self::from_terms(index.nvars(), row.iter().map(|(i, c)| (index.monomial(*i).clone(), c.clone())))
    }

    /// Dense coefficient vector over `monomials`; `None` if a term is missing
    /// from the list.
    #[must_use]
    pub fn dense_coefficients(&self, monomials: &[Monomial]) -> Option<Vec<Scalar>> {
        let mut found = 0;
        let v = monomials
            .iter()
            .map(|m| match self.terms.get(m) {
                Some(c) => {
                    found += 1;
                    c.clone()
                }
                None => Scalar::zero(),
            })
            .collect();
        (found == self.terms.len()).then_some(v)
    }

    /// Sparse coefficient row relative to `index`; `None` if some term lies
    /// beyond the index's degree bound.
    #[must_use]
    pub fn to_row(&self, index: &MonomialIndex) -> Option<SparseRow> {
        let mut row: SparseRow =
            self.terms.iter().map(|(m, c)| index.index(m).map(|i| (i, c.clone()))).collect::<Option<_>>()?;
        row.sort_by_key(|e| e.0);
        Some(row)
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.n);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    #[must_use]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    #[must_use]
    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree, `None` for zero.
    #[must_use]
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Smallest degree of a term, `None` for zero.
    #[must_use]
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Largest term in the monomial order.
    #[must_use]
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    #[must_use]
    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.order()
    }

    /// Degree `d` part.
    #[must_use]
    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter(|m| m.degree() == d)
    }

    /// Terms of degree at most `d`.
    #[must_use]
    pub fn truncate(&self, d: u32) -> Self {
        self.filter(|m| m.degree() <= d)
    }

    /// Terms satisfying `keep`.
    #[must_use]
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
            role: PhantomData,
        }
    }

    /// Terms of maximal weight `sum w_i e_i`.
    #[must_use]
    pub fn initial_form(&self, w: &[i64]) -> Self {
        let Some(top) = self.terms.keys().map(|m| m.weight(w)).max() else {
            return self.clone();
        };
        self.filter(|m| m.weight(w) == top)
    }

    #[must_use]
    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(), role: PhantomData }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other.n)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other.n)?;
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), &(x * y));
            }
        }
        Ok(out)
    }

    #[must_use]
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self * m`.
    #[must_use]
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(), role: PhantomData }
    }

    /// Replaces each variable `i` by `images[i]`.
    pub fn substitute(&self, images: &[Self]) -> Result<Self, PolyError> {
        if images.len() != self.n {
            return Err(PolyError::VarCountMismatch { expected: self.n, found: images.len() });
        }
        let m = images.first().map_or(self.n, Polynomial::nvars);
        if let Some(bad) = images.iter().find(|p| p.n != m) {
            return Err(PolyError::VarCountMismatch { expected: m, found: bad.n });
        }
        let maxdeg: Vec<u32> = (0..self.n).map(|i| self.terms.keys().map(|t| t.exp(i)).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<Self>> = images
            .iter()
            .zip(&maxdeg)
            .map(|(p, &d)| {
                let mut v = vec![Self::one(m)];
                for k in 1..=d as usize {
                    let next = &v[k - 1] * p;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(m);
        for (mono, c) in &self.terms {
            let mut t = Self::constant(m, c.clone());
            for (i, &e) in mono.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitutes `v_i -> v_i + shift_i`.
    pub fn shift(&self, shift: &[Scalar]) -> Result<Self, PolyError> {
        let images: Vec<Self> =
            shift.iter().enumerate().map(|(i, s)| &Self::var(self.n, i) + &Self::constant(self.n, s.clone())).collect();
        self.substitute(&images)
    }

    /// Value at a point.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        self.check_vars(point.len())?;
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluates at commuting square matrices.
    pub fn evaluate_matrices(&self, mats: &[Matrix]) -> Result<Matrix, PolyError> {
        self.check_vars(mats.len())?;
        let d = mats.first().map_or(1, Matrix::rows);
        let mut acc = Matrix::zeros(d, d);
        for (m, c) in &self.terms {
            let mut t = Matrix::identity(d).scale(c);
            for (a, &e) in mats.iter().zip(m.exps()) {
                for _ in 0..e {
                    t = t.checked_mul(a)?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Same coefficients viewed in the other ring.
    #[must_use]
    pub fn cast<S: Role>(&self) -> Polynomial<S> {
        Polynomial { n: self.n, terms: self.terms.clone(), role: PhantomData }
    }

    /// Same polynomial with extra trailing variables.
    #[must_use]
    pub fn embed(&self, n: usize) -> Self {
        assert!(n >= self.n);
        Self {
            n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exps().to_vec();
                    e.resize(n, 0);
                    (Monomial::new(e), c.clone())
                })
                .collect(),
            role: PhantomData,
        }
    }

    /// Divides by the leading coefficient.
    #[must_use]
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&(Scalar::one() / c)),
            None => self.clone(),
        }
    }

    fn check_vars(&self, n: usize) -> Result<(), PolyError> {
        if n == self.n {
            Ok(())
        } else {
            Err(PolyError::VarCountMismatch { expected: self.n, found: n })
        }
    }
}

impl<R: Role> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", format_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", m.render(R::PREFIX))?;
            } else {
                write!(f, "{}*{}", format_scalar(&abs), m.render(R::PREFIX))?;
            }
        }
        Ok(())
    }
}

impl<R: Role> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Role> serde::Serialize for Polynomial<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<R: Role> std::ops::Add for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: Self) -> Polynomial<R> {
        self.checked_add(rhs).expect("variable counts differ")
    }
}

impl<R: Role> std::ops::Sub for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: Self) -> Polynomial<R> {
        self.checked_add(&-rhs).expect("variable counts differ")
    }
}

impl<R: Role> std::ops::Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        self.scale(&-Scalar::one())
    }
}

impl<R: Role> std::ops::Mul for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: Self) -> Polynomial<R> {
        self.checked_mul(rhs).expect("variable counts differ")
    }
}

/// `a^e ⌟ x^b`: `b!/(b-e)! x^(b-e)` when `e <= b`, else zero.
#[must_use]
pub fn contract_monomial(a: &Monomial, b: &Monomial) -> Option<(Monomial, Scalar)> {
    let rest = a.quotient_of(b)?;
    let mut c = num_bigint::BigInt::one();
    for (&bi, &ai) in b.exps().iter().zip(a.exps()) {
        c *= falling_factorial(bi, ai);
    }
    Some((rest, Scalar::from_integer(c)))
}

/// Contraction action of `R` on `S`.
pub fn contract(op: &OperatorPolynomial, f: &DualPolynomial) -> Result<DualPolynomial, PolyError> {
    if op.n != f.n {
        return Err(PolyError::VarCountMismatch { expected: f.n, found: op.n });
    }
    let mut out = DualPolynomial::zero(f.n);
    for (a, x) in &op.terms {
        for (b, y) in &f.terms {
            if let Some((m, c)) = contract_monomial(a, b) {
                out.add_term(m, &(c * x * y));
            }
        }
    }
    Ok(out)
}

/// Contraction by the single variable `a_i`.
#[must_use]
pub fn contract_var(i: usize, f: &DualPolynomial) -> DualPolynomial {
    let mut out = DualPolynomial::zero(f.n);
    for (b, y) in &f.terms {
        let e = b.exp(i);
        if e > 0 {
            let mut ex = b.exps().to_vec();
            ex[i] -= 1;
            out.add_term(Monomial::new(ex), &(y * Scalar::from_integer(e.into())));
        }
    }
    out
}

/// `x_i^(s) = x_i^s / s!` in `n` variables.
#[must_use]
pub fn divided_power(n: usize, i: usize, s: u32) -> DualPolynomial {
    DualPolynomial::term(Monomial::var_pow(n, i, s), Scalar::one() / factorial(s))
}

/// `f^(s) = f^s / s!`.
#[must_use]
pub fn divided_power_of<R: Role>(f: &Polynomial<R>, s: u32) -> Polynomial<R> {
    f.pow(s).scale(&(Scalar::one() / factorial(s)))
}

/// Reads the coefficients of `f` as coefficients of divided-power monomials
/// `x^(b) = prod x_i^(b_i)` and returns the plain form.
#[must_use]
pub fn divided_normalize(f: &DualPolynomial) -> DualPolynomial {
    DualPolynomial::from_terms(
        f.n,
        f.terms.iter().map(|(m, c)| {
            let mut den = Scalar::one();
            for &e in m.exps() {
                den *= factorial(e);
            }
            (m.clone(), c / den)
        }),
    )
}

/// Coefficient matrix of a list of polynomials: one row per polynomial over
/// the union of their monomials (ascending).
#[must_use]
pub fn coefficient_matrix<R: Role>(polys: &[Polynomial<R>]) -> (Vec<Monomial>, Matrix) {
    let mut ms: Vec<Monomial> = polys.iter().flat_map(|p| p.terms.keys().cloned()).collect();
    ms.sort();
    ms.dedup();
    let rows: Vec<Vec<Scalar>> =
        polys.iter().map(|p| p.dense_coefficients(&ms).expect("all monomials collected")).collect();
    let m = if rows.is_empty() { Matrix::zeros(0, ms.len()) } else { Matrix::from_rows(rows).expect("equal lengths") };
    (ms, m)
}

/// Dimension of the span of the given polynomials.
#[must_use]
pub fn span_dim<R: Role>(polys: &[Polynomial<R>]) -> usize {
    coefficient_matrix(polys).1.rank()
}

/// Number of variables `f` essentially depends on: the dimension of the span
/// of its first-order contractions.
pub fn essential_variable_count(f: &DualPolynomial) -> Result<usize, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let partials: Vec<DualPolynomial> = (0..f.n).map(|i| contract_var(i, f)).collect();
    Ok(span_dim(&partials))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ratio};

    fn d(s: &str, n: usize) -> DualPolynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn o(s: &str, n: usize) -> OperatorPolynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contract(&o("a1", 1), &d("x1^2", 1)).unwrap(), d("2*x1", 1));
        assert_eq!(contract(&o("a1*a2", 2), &d("x1*x2", 2)).unwrap(), d("1", 2));
        let f = d("x1^(4) + x2^(2)", 2);
        assert!(contract(&o("a2^2 - a1^4", 2), &f).unwrap().is_zero());
        assert!(contract(&o("a1", 2), &d("x1", 1).embed(2)).unwrap() == d("1", 2));
        assert!(contract(&o("a1", 1), &d("x1", 2)).is_err());
    }

    #[test]
    fn divided_powers() {
        assert_eq!(divided_power(1, 0, 3), d("1/6*x1^3", 1));
        assert_eq!(divided_power(1, 0, 0), d("1", 1));
        let a2 = o("a1^2", 1);
        assert_eq!(contract(&a2, &divided_power(1, 0, 4)).unwrap(), divided_power(1, 0, 2));
        assert_eq!(divided_normalize(&d("x1^2*x2", 2)), d("1/2*x1^2*x2", 2));
        assert_eq!(d("(x1+x2)^(2)", 2), d("1/2*x1^2 + x1*x2 + 1/2*x2^2", 2));
    }

    #[test]
    fn essential_variables() {
        assert_eq!(essential_variable_count(&d("x1^3+x2^3+x3^3", 3)).unwrap(), 3);
        assert_eq!(essential_variable_count(&d("(x1+x2)^3", 3)).unwrap(), 1);
        assert!(essential_variable_count(&DualPolynomial::zero(2)).is_err());
        // x^3 + y^3 + mu z^3 + (x+z)^3 for a generic mu
        assert_eq!(essential_variable_count(&d("x1^3 + x2^3 + 7*x3^3 + (x1+x3)^3", 3)).unwrap(), 3);
    }

    #[test]
    fn display_round_trip() {
        for s in ["x1^2*x2 - 1/2*x3 + 4", "-a1^4 + a2^2", "0", "x1"] {
            let n = 3;
            if s.contains('a') {
                let p = o(s, n);
                assert_eq!(o(&p.to_string(), n), p);
            } else {
                let p = d(s, n);
                assert_eq!(d(&p.to_string(), n), p);
            }
        }
        assert_eq!(d("x2 + x1^2", 2).to_string(), "x1^2 + x2");
    }

    #[test]
    fn substitution_and_shift() {
        let p = o("a1^2 - a2", 2);
        let q = p.shift(&[int(1), int(0)]).unwrap();
        assert_eq!(q, o("a1^2 + 2*a1 + 1 - a2", 2));
        assert_eq!(q.shift(&[int(-1), int(0)]).unwrap(), p);
        assert_eq!(p.evaluate(&[int(3), ratio(1, 2)]).unwrap(), ratio(17, 2));
        assert_eq!(o("a1*a2 + a2^2", 2).initial_form(&[1, 2]), o("a2^2", 2));
        assert_eq!(o("a1 + a1^2", 2).initial_form(&[-1, -1]), o("a1", 2));
    }
}
