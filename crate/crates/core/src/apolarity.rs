//! Macaulay inverse systems: contraction closures, Hilbert functions, apolar
//! ideals, socle types and apolar algebras.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Evaluator, QuotientAlgebra};
use crate::commuting::CommutingError;
use crate::exactalg::{Matrix, Scalar, SparseEchelon, SparseRow, Subspace};
use crate::poly::{
    contract, contract_var, monomials_of_degree, DualPolynomial, Monomial, MonomialIndex, OperatorPolynomial,
    PolyError, Polynomial,
};
use crate::profile::GradedProfile;

/// Failures of inverse-system computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApolarError {
    #[error("generator {} is not homogeneous", .0 + 1)]
    Inhomogeneous(usize),
    #[error("generators use {found} variables, expected {expected}")]
    VarCountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Commuting(#[from] CommutingError),
}

/// Finitely many dual polynomials `E`; the module they generate under
/// contraction is `M = R ⌟ E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseSystem {
    n: usize,
    generators: Vec<DualPolynomial>,
}

impl InverseSystem {
    /// Drops zero and repeated generators.
    pub fn new(n: usize, generators: Vec<DualPolynomial>) -> Result<Self, ApolarError> {
        let mut gens: Vec<DualPolynomial> = Vec::new();
        for g in generators {
            if g.nvars() != n {
                return Err(ApolarError::VarCountMismatch { expected: n, found: g.nvars() });
            }
            if !g.is_zero() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Self { n, generators: gens })
    }

    /// Parses a comma-separated list in the dual grammar.
    pub fn parse(text: &str, n: usize) -> Result<Self, ApolarError> {
        Self::new(n, crate::poly::parse_list(text, n)?)
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn generators(&self) -> &[DualPolynomial] {
        &self.generators
    }

    /// Largest generator degree, `0` if empty.
    #[must_use]
    pub fn max_degree(&self) -> u32 {
        self.generators.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    #[must_use]
    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    fn require_homogeneous(&self) -> Result<(), ApolarError> {
        match self.generators.iter().position(|g| !g.is_homogeneous()) {
            Some(i) => Err(ApolarError::Inhomogeneous(i)),
            None => Ok(()),
        }
    }
}

/// The contraction closure `Diff(E)` as an echelon basis over dual monomials.
///
/// Each basis row has a distinct leading (largest) monomial, so the rows of
/// degree at most `i` span `Diff^{<=i}`.
#[derive(Clone, Debug)]
pub struct DiffClosure {
    index: MonomialIndex,
    echelon: SparseEchelon,
}

impl DiffClosure {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    fn row_degree(&self, row: &SparseRow) -> u32 {
        self.index.monomial(row.last().expect("nonzero row").0).degree()
    }

    /// `dim Diff^{<=i}` for `i = 0..=s`.
    #[must_use]
    pub fn filtration_dims(&self) -> Vec<usize> {
        let top = self.index.max_degree() as usize;
        let mut per = vec![0usize; top + 1];
        for r in self.echelon.rows() {
            per[self.row_degree(r) as usize] += 1;
        }
        per.iter()
            .scan(0, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    /// Basis polynomials, ascending by leading monomial.
    #[must_use]
    pub fn basis(&self) -> Vec<DualPolynomial> {
        let mut rows: Vec<&SparseRow> = self.echelon.rows().iter().collect();
        rows.sort_by_key(|r| r.last().map(|e| e.0));
        rows.into_iter().map(|r| DualPolynomial::from_row(&self.index, r)).collect()
    }

    /// Basis polynomials whose leading monomial has degree `k`. For a
    /// homogeneous system these span the graded piece `M_k`.
    #[must_use]
    pub fn basis_of_degree(&self, k: u32) -> Vec<DualPolynomial> {
        self.basis().into_iter().filter(|p| p.degree() == Some(k)).collect()
    }

    /// True iff `f` lies in the closure.
    #[must_use]
    pub fn contains(&self, f: &DualPolynomial) -> bool {
        match f.to_row(&self.index) {
            Some(r) => self.echelon.contains(&r),
            None => false,
        }
    }
}

/// Smallest contraction-closed subspace of `S` containing `E`.
#[must_use]
pub fn diff_closure(e: &InverseSystem) -> DiffClosure {
    let index = MonomialIndex::new(e.n, e.max_degree());
    let mut echelon = SparseEchelon::new(index.len());
    let mut queue: Vec<DualPolynomial> = e.generators.clone();
    while let Some(f) = queue.pop() {
        let row = f.to_row(&index).expect("degrees bounded by the generators");
        let reduced = echelon.reduce(&row);
        if reduced.is_empty() {
            continue;
        }
        echelon.insert(&reduced);
        let g = DualPolynomial::from_row(&index, &reduced);
        for i in 0..e.n {
            let h = contract_var(i, &g);
            if !h.is_zero() {
                queue.push(h);
            }
        }
    }
    DiffClosure { index, echelon }
}

/// Local Hilbert function `H(i) = dim Diff^{<=i} / Diff^{<=i-1}` of `R/Ann(E)`.
#[must_use]
pub fn hilbert_function(e: &InverseSystem) -> GradedProfile {
    let dims = diff_closure(e).filtration_dims();
    let mut prev = 0;
    GradedProfile::new(
        dims.into_iter()
            .map(|x| {
                let h = x - prev;
                prev = x;
                h
            })
            .collect(),
    )
}

/// A subspace of operator polynomials supported on a fixed monomial list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpace {
    n: usize,
    monomials: Vec<Monomial>,
    space: Subspace,
}

impl OperatorSpace {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Canonical basis polynomials.
    #[must_use]
    pub fn basis(&self) -> Vec<OperatorPolynomial> {
        self.space
            .basis()
            .iter()
            .map(|v| OperatorPolynomial::from_terms(self.n, self.monomials.iter().cloned().zip(v.iter().cloned())))
            .collect()
    }

    /// True iff `f` lies in the space.
    #[must_use]
    pub fn contains(&self, f: &OperatorPolynomial) -> bool {
        match f.dense_coefficients(&self.monomials) {
            Some(v) => self.space.contains(&v).unwrap_or(false),
            None => f.is_zero(),
        }
    }

    /// Span of the given polynomials over the same monomial list.
    #[must_use]
    pub fn span_of(&self, polys: &[OperatorPolynomial]) -> Option<Self> {
        let vs = polys.iter().map(|p| p.dense_coefficients(&self.monomials)).collect::<Option<Vec<_>>>()?;
        Some(Self {
            n: self.n,
            monomials: self.monomials.clone(),
            space: Subspace::from_vectors(self.monomials.len(), vs),
        })
    }
}

/// Operators `theta` of degree `k` with `theta ⌟ E = 0`; for an
/// inhomogeneous `E`, operators of degree at most `k`.
pub fn apolar_ideal_piece(e: &InverseSystem, k: u32) -> Result<OperatorSpace, ApolarError> {
    let monomials: Vec<Monomial> = if e.is_homogeneous() {
        monomials_of_degree(e.n, k)
    } else {
        (0..=k).flat_map(|d| monomials_of_degree(e.n, d)).collect()
    };
    let images: Vec<Vec<DualPolynomial>> = monomials
        .iter()
        .map(|m| {
            let op = OperatorPolynomial::monomial(m.clone());
            e.generators.iter().map(|g| contract(&op, g)).collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    // One column per monomial, one row per (generator, dual monomial).
    let mut rows: BTreeMap<(usize, Monomial), Vec<Scalar>> = BTreeMap::new();
    for (c, imgs) in images.iter().enumerate() {
        for (j, p) in imgs.iter().enumerate() {
            for (m, x) in p.terms() {
                rows.entry((j, m.clone())).or_insert_with(|| vec![Scalar::from_integer(0.into()); monomials.len()])
                    [c] = x.clone();
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(monomials.len())
    } else {
        Matrix::from_rows(rows.into_values().collect()).expect("equal lengths").kernel_basis()
    };
    Ok(OperatorSpace { n: e.n, monomials, space })
}

/// Dimension of the space of minimal generators of degree `k` of `Ann(E)`:
/// `dim I_k - dim R_1 I_{k-1}`. Requires homogeneous `E`.
pub fn minimal_generator_count(e: &InverseSystem, k: u32) -> Result<usize, ApolarError> {
    e.require_homogeneous()?;
    let top = apolar_ideal_piece(e, k)?;
    if k == 0 {
        return Ok(top.dim());
    }
    let below = apolar_ideal_piece(e, k - 1)?;
    let products: Vec<OperatorPolynomial> =
        below.basis().iter().flat_map(|p| (0..e.n).map(move |i| p * &OperatorPolynomial::var(e.n, i))).collect();
    let sub = top.span_of(&products).expect("products have degree k");
    Ok(top.dim() - sub.dim())
}

/// Socle type `{i: a_i}` of a graded apolar algebra: `a_i` is the number of
/// degree-`i` generators of the inverse system module.
pub fn socle_type(e: &InverseSystem) -> Result<BTreeMap<u32, usize>, ApolarError> {
    e.require_homogeneous()?;
    let closure = diff_closure(e);
    let mut out = BTreeMap::new();
    for i in 0..=e.max_degree() {
        let piece = closure.basis_of_degree(i);
        if piece.is_empty() {
            continue;
        }
        let above = closure.basis_of_degree(i + 1);
        let mut derived: Vec<DualPolynomial> =
            above.iter().flat_map(|m| (0..e.n).map(move |j| contract_var(j, m))).collect();
        derived.retain(|p| !p.is_zero());
        let rank_derived = crate::poly::span_dim(&derived);
        let a = piece.len() - rank_derived;
        if a > 0 {
            out.insert(i, a);
        }
    }
    Ok(out)
}

/// The module `R ⌟ E` inside `S^m`, with coordinates `(generator, monomial)`.
struct ContractionEvaluator<'a> {
    e: &'a InverseSystem,
    index: MonomialIndex,
}

impl ContractionEvaluator<'_> {
    fn split(&self, v: &SparseRow) -> Vec<DualPolynomial> {
        let len = self.index.len();
        let mut parts = vec![Vec::new(); self.e.generators.len()];
        for (c, x) in v {
            parts[c / len].push((c % len, x.clone()));
        }
        parts.iter().map(|r| DualPolynomial::from_row(&self.index, r)).collect()
    }

    fn join(&self, parts: &[DualPolynomial]) -> SparseRow {
        let len = self.index.len();
        parts
            .iter()
            .enumerate()
            .flat_map(|(j, p)| {
                p.to_row(&self.index).expect("degree bounded").into_iter().map(move |(c, x)| (j * len + c, x))
            })
            .collect()
    }
}

impl Evaluator for ContractionEvaluator<'_> {
    fn nvars(&self) -> usize {
        self.e.n
    }
    fn start(&self) -> SparseRow {
        self.join(&self.e.generators)
    }
    fn act(&self, i: usize, v: &SparseRow) -> SparseRow {
        let parts: Vec<DualPolynomial> = self.split(v).iter().map(|p| contract_var(i, p)).collect();
        self.join(&parts)
    }
}

/// `R/Ann(E)` with its standard monomial basis and multiplication matrices.
pub fn apolar_algebra(e: &InverseSystem) -> Result<QuotientAlgebra, ApolarError> {
    let ev = ContractionEvaluator { e, index: MonomialIndex::new(e.n, e.max_degree()) };
    Ok(QuotientAlgebra::from_evaluator(&ev)?)
}

/// The inverse system `I^⊥ ∩ S_{<=D}` of an ideal `I` whose quotient is
/// `alg`, for `I` supported at the origin with `m^(D+1) ⊆ I`.
///
/// A dual polynomial `f` of degree at most `D` is orthogonal to `I` iff
/// `θ ⌟ f` has zero constant term for all `θ` in `I`; equivalently the
/// linear functional `θ -> (θ ⌟ f)(0)` factors through `R/I`.
#[must_use]
pub fn inverse_system_of(alg: &QuotientAlgebra, top_degree: u32) -> Vec<DualPolynomial> {
    let n = alg.nvars();
    let d = alg.dim();
    if d == 0 {
        return Vec::new();
    }
    // The functional phi on R/I gives f = sum_m phi(m) x^m / m!; its values on
    // monomials of degree <= top_degree are linear in phi.
    let actions = alg.actions();
    let mut memo = std::collections::HashMap::new();
    memo.insert(Monomial::one(n), vec![(0usize, Scalar::from_integer(1.into()))]);
    let index = MonomialIndex::new(n, top_degree);
    let images: Vec<Vec<Scalar>> = index
        .monomials()
        .iter()
        .map(|m| crate::algebra::densify(&crate::algebra::monomial_image(&mut memo, &actions, m), d))
        .collect();
    (0..d)
        .map(|k| {
            let f = DualPolynomial::from_terms(
                n,
                index.monomials().iter().zip(&images).map(|(m, v)| (m.clone(), v[k].clone())),
            );
            crate::poly::divided_normalize(&f)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{divided_power, parse_list};

    fn sys(s: &str, n: usize) -> InverseSystem {
        InverseSystem::parse(s, n).unwrap()
    }

    #[test]
    fn closures_of_small_systems() {
        assert_eq!(hilbert_function(&sys("x1^(4)", 1)).values(), &[1, 1, 1, 1, 1]);
        assert_eq!(hilbert_function(&sys("x1^4 + x2^4", 2)).values(), &[1, 2, 2, 2, 1]);
        assert_eq!(hilbert_function(&sys("x1^3*x2", 2)).values(), &[1, 2, 2, 2, 1]);
        assert_eq!(hilbert_function(&sys("x1*x2, x3*x4, x1*x3+x2*x4", 4)).values(), &[1, 4, 3]);
    }

    #[test]
    fn inhomogeneous_filtration() {
        let e = sys("x1^(4) + x2^(2)", 2);
        assert_eq!(hilbert_function(&e).values(), &[1, 2, 1, 1, 1]);
        assert_eq!(hilbert_function(&e).total(), 6);
    }

    #[test]
    fn apolar_pieces_of_sum_of_cubes() {
        let e = sys("x1^3 + x2^3 + x3^3", 3);
        let i2 = apolar_ideal_piece(&e, 2).unwrap();
        assert_eq!(i2.dim(), 3);
        for p in parse_list("a1*a2, a2*a3, a1*a3", 3).unwrap() {
            assert!(i2.contains(&p));
        }
        let i3 = apolar_ideal_piece(&e, 3).unwrap();
        assert_eq!(i3.dim(), 9);
        assert_eq!(minimal_generator_count(&e, 3).unwrap(), 2);
        assert_eq!(minimal_generator_count(&e, 2).unwrap(), 3);
    }

    #[test]
    fn first_piece_of_pure_power() {
        let e = InverseSystem::new(3, vec![divided_power(3, 0, 5)]).unwrap();
        let i1 = apolar_ideal_piece(&e, 1).unwrap();
        assert_eq!(i1.dim(), 2);
        assert!(i1.contains(&parse_list("a2", 3).unwrap()[0]));
    }

    #[test]
    fn socle_types() {
        let t = socle_type(&sys("x1*x2, x3*x4, x1*x3+x2*x4", 4)).unwrap();
        assert_eq!(t, BTreeMap::from([(2, 3)]));
        assert_eq!(socle_type(&sys("x1^5", 1)).unwrap(), BTreeMap::from([(5, 1)]));
        assert_eq!(socle_type(&sys("x1^4, x1^2*x2", 2)).unwrap(), BTreeMap::from([(3, 1), (4, 1)]));
        assert!(socle_type(&sys("x1^2 + x2", 2)).is_err());
    }

    #[test]
    fn apolar_algebra_of_divided_square() {
        let alg = apolar_algebra(&sys("x1^(2)", 1)).unwrap();
        assert_eq!(alg.dim(), 3);
        let a = alg.tuple().unwrap().matrix(0);
        assert_eq!(a.rank(), 2);
        assert!(a.pow(3).unwrap().is_zero());
        let g = apolar_algebra(&sys("x1^4 + x2^4", 2)).unwrap();
        assert_eq!(g.tuple().unwrap().kernel_profile().unwrap().values(), &[1, 2, 2, 2, 1]);
        assert_eq!(g.tuple().unwrap().socle_dim(), 1);
    }

    #[test]
    fn inverse_system_round_trip() {
        let e = sys("x1*x2, x3*x4, x1*x3+x2*x4", 4);
        let alg = apolar_algebra(&e).unwrap();
        let back = InverseSystem::new(4, inverse_system_of(&alg, 2)).unwrap();
        let c1 = diff_closure(&e);
        let c2 = diff_closure(&back);
        assert_eq!(c1.dim(), c2.dim());
        assert!(e.generators().iter().all(|g| c2.contains(g)));
    }
}
