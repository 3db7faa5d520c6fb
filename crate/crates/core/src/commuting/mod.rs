//! Commuting matrix tuples: commutativity, cyclic vectors, tangent spaces to
//! the commuting variety, kernel formulas for Hilbert functions and socles,
//! and eigenvalue certificates.
//!
//! A tuple `(A_1..A_n)` of commuting `d x d` matrices with a cyclic vector `v`
//! is the same thing as a quotient `R/I` of colength `d`, via
//! `f -> f(A_1..A_n) v`.

mod tangent;

pub use tangent::{
    hilb_tangent_dim, principal_component_dim, projected_tangent_dim, tangent_space_basis, tangent_space_dim,
    ShapeConstraint,
};

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{LinalgError, Matrix, Scalar, SparseEchelon, Subspace, UniPoly};
use crate::profile::GradedProfile;
use crate::random;

/// Failures of the commuting-matrix layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommutingError {
    #[error("matrix {index} is {rows}x{cols}, expected {d}x{d}")]
    BadShape { index: usize, rows: usize, cols: usize, d: usize },
    #[error("matrices {} and {} do not commute", .0 + 1, .1 + 1)]
    NotCommuting(usize, usize),
    #[error("matrix {} is not nilpotent", .0 + 1)]
    NotNilpotent(usize),
    #[error("no cyclic vector found")]
    NoCyclicVector,
    #[error("shape constraint does not match the tuple")]
    ShapeMismatch,
    #[error("the tuple is empty")]
    Empty,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `n` pairwise commuting `d x d` matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutingTuple {
    d: usize,
    matrices: Vec<Matrix>,
}

/// Index of the first non-commuting pair, if any, after checking shapes.
pub fn check_commute(matrices: &[Matrix]) -> Result<Option<(usize, usize)>, CommutingError> {
    check_shapes(matrices)?;
    for i in 0..matrices.len() {
        for j in i + 1..matrices.len() {
            if &matrices[i] * &matrices[j] != &matrices[j] * &matrices[i] {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

fn check_shapes(matrices: &[Matrix]) -> Result<usize, CommutingError> {
    let d = matrices.first().ok_or(CommutingError::Empty)?.rows();
    for (index, m) in matrices.iter().enumerate() {
        if m.rows() != d || m.cols() != d {
            return Err(CommutingError::BadShape { index, rows: m.rows(), cols: m.cols(), d });
        }
    }
    Ok(d)
}

impl CommutingTuple {
    /// Verifies shapes and commutativity.
    pub fn new(matrices: Vec<Matrix>) -> Result<Self, CommutingError> {
        let d = check_shapes(&matrices)?;
        if let Some((i, j)) = check_commute(&matrices)? {
            return Err(CommutingError::NotCommuting(i, j));
        }
        Ok(Self { d, matrices })
    }

    /// `n` zero matrices of size `d`.
    #[must_use]
    pub fn zero(n: usize, d: usize) -> Self {
        Self { d, matrices: vec![Matrix::zeros(d, d); n] }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    #[must_use]
    pub fn d(&self) -> usize {
        self.d
    }

    #[must_use]
    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    #[must_use]
    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    /// `P A_i P^{-1}` for every `i`.
    pub fn conjugate(&self, p: &Matrix, p_inv: &Matrix) -> Result<Self, CommutingError> {
        let ms = self.matrices.iter().map(|a| a.conjugate(p, p_inv)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { d: self.d, matrices: ms })
    }

    /// Smallest subspace containing `v` and stable under every `A_i`.
    pub fn krylov_closure(&self, v: &[Scalar]) -> Result<Subspace, CommutingError> {
        krylov(&self.matrices, self.d, v)
    }

    /// True iff `v` generates `Q^d` as a module over `Q[A_1..A_n]`.
    pub fn is_stable(&self, v: &[Scalar]) -> Result<bool, CommutingError> {
        Ok(self.krylov_closure(v)?.dim() == self.d)
    }

    /// Searches the standard basis, then seeded random small-integer vectors.
    #[must_use]
    pub fn find_cyclic_vector(&self, seed: u64) -> Option<Vec<Scalar>> {
        let d = self.d;
        for k in (0..d).rev() {
            let v: Vec<Scalar> =
                (0..d).map(|i| if i == k { Scalar::from_integer(1.into()) } else { Scalar::zero() }).collect();
            if self.is_stable(&v).unwrap_or(false) {
                return Some(v);
            }
        }
        let mut rng = random::rng(seed);
        for _ in 0..32 {
            let v = random::small_vector(&mut rng, d, 9);
            if self.is_stable(&v).unwrap_or(false) {
                return Some(v);
            }
        }
        None
    }

    /// Errors unless every matrix is nilpotent.
    pub fn require_nilpotent(&self) -> Result<(), CommutingError> {
        for (i, a) in self.matrices.iter().enumerate() {
            if !a.pow(u32::try_from(self.d).unwrap_or(u32::MAX))?.is_zero() {
                return Err(CommutingError::NotNilpotent(i));
            }
        }
        Ok(())
    }

    /// True iff each matrix has a single eigenvalue (over the algebraic
    /// closure), i.e. the tuple corresponds to a one-point support.
    pub fn supported_at_one_point(&self) -> Result<bool, CommutingError> {
        for a in &self.matrices {
            if a.char_poly()?.squarefree_part()?.degree() != Some(1) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Products of all multisets of `k` matrices, zero products dropped.
    fn level_products(&self, prev: &[(usize, Matrix)]) -> Vec<(usize, Matrix)> {
        let mut out = Vec::new();
        for (last, p) in prev {
            for i in *last..self.n() {
                let q = p * &self.matrices[i];
                if !q.is_zero() {
                    out.push((i, q));
                }
            }
        }
        out
    }

    /// Hilbert function of the local algebra from the transposed kernels
    /// `dim A/n^k = dim of the intersection of ker (A_{i1}..A_{ik})^T`.
    ///
    /// Requires nilpotent matrices.
    pub fn kernel_profile(&self) -> Result<GradedProfile, CommutingError> {
        self.require_nilpotent()?;
        let d = self.d;
        let mut quotient_dims = vec![0usize];
        let mut level: Vec<(usize, Matrix)> = vec![(0, Matrix::identity(d))];
        loop {
            level = self.level_products(&level);
            let mut e = SparseEchelon::new(d);
            for (_, p) in &level {
                let pt = p.transpose();
                for r in 0..d {
                    let row: Vec<_> = pt.row(r).iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                    e.insert(&row);
                }
            }
            quotient_dims.push(d - e.rank());
            if level.is_empty() {
                break;
            }
        }
        let h = quotient_dims.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(GradedProfile::new(h))
    }

    /// Dimension of the common kernel of all matrices.
    #[must_use]
    pub fn socle_dim(&self) -> usize {
        let mut e = SparseEchelon::new(self.d);
        for a in &self.matrices {
            for r in 0..self.d {
                let row: Vec<_> = a.row(r).iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                e.insert(&row);
            }
        }
        self.d - e.rank()
    }

    /// Adds `lambda X_i` to `A_i`. Missing directions count as zero.
    ///
    /// Since `[A_i + t X_i, A_j + t X_j]` is a polynomial of degree two in
    /// `t` without constant term, commuting at two distinct nonzero values
    /// certifies commuting for every `t`; the check uses `lambda` and a
    /// seeded random value.
    pub fn deformation_path(&self, directions: &[Matrix], lambda: &Scalar, seed: u64) -> Result<Self, CommutingError> {
        let at = |t: &Scalar| -> Result<Vec<Matrix>, CommutingError> {
            self.matrices
                .iter()
                .enumerate()
                .map(|(i, a)| match directions.get(i) {
                    Some(x) => Ok(a.checked_add(&x.scale(t))?),
                    None => Ok(a.clone()),
                })
                .collect()
        };
        let mut rng = random::rng(seed);
        let mut probes: Vec<Scalar> = Vec::new();
        if !lambda.is_zero() {
            probes.push(lambda.clone());
        }
        while probes.len() < 2 {
            let t = random::small_scalar(&mut rng, 97);
            if !t.is_zero() && !probes.contains(&t) {
                probes.push(t);
            }
        }
        for t in &probes {
            if let Some((i, j)) = check_commute(&at(t)?)? {
                return Err(CommutingError::NotCommuting(i, j));
            }
        }
        Ok(Self { d: self.d, matrices: at(lambda)? })
    }
}

fn krylov(matrices: &[Matrix], d: usize, v: &[Scalar]) -> Result<Subspace, CommutingError> {
    if v.len() != d {
        return Err(LinalgError::DimensionMismatch { expected: d, found: v.len() }.into());
    }
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    let mut span = Subspace::zero(d);
    let mut frontier = vec![v.to_vec()];
    while let Some(w) = frontier.pop() {
        if span.contains(&w)? {
            continue;
        }
        basis.push(w.clone());
        span = Subspace::from_vectors(d, basis.clone());
        for a in matrices {
            frontier.push(a.mul_vec(&w)?);
        }
    }
    Ok(span)
}

/// Squarefreeness of the characteristic polynomial plus kernel dimensions of
/// powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenSummary {
    /// `gcd(p, p') = 1`, i.e. all eigenvalues are distinct.
    pub squarefree: bool,
    /// Degree of the squarefree part: the number of distinct eigenvalues.
    pub distinct_eigenvalues: usize,
    #[serde(serialize_with = "ser_display")]
    pub char_poly: UniPoly,
    /// `(k, dim ker M^k)` for each requested `k`.
    pub power_kernel_dims: Vec<(u32, usize)>,
}

fn ser_display<S: serde::Serializer>(p: &UniPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Eigenvalue certificates for `m`.
pub fn eigen_summary(m: &Matrix, powers: &[u32]) -> Result<EigenSummary, CommutingError> {
    let cp = m.char_poly()?;
    let sf = cp.squarefree_part()?;
    let power_kernel_dims =
        powers.iter().map(|&k| m.power_kernel_dim(k).map(|dim| (k, dim))).collect::<Result<Vec<_>, _>>()?;
    Ok(EigenSummary {
        squarefree: cp.is_squarefree()?,
        distinct_eigenvalues: sf.degree().unwrap_or(0),
        char_poly: cp,
        power_kernel_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn jordan(d: usize) -> Matrix {
        Matrix::from_fn(d, d, |i, j| if j == i + 1 { int(1) } else { int(0) })
    }

    #[test]
    fn commute_checks() {
        assert_eq!(check_commute(&[jordan(3)]).unwrap(), None);
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(&[&[0, 1], &[5, 7]]);
        assert_eq!(check_commute(&[a.clone(), b]).unwrap(), Some((0, 1)));
        assert!(check_commute(&[a, Matrix::zeros(3, 3)]).is_err());
    }

    #[test]
    fn jordan_block_stability() {
        let t = CommutingTuple::new(vec![jordan(3)]).unwrap();
        let e = |k: usize| (0..3).map(|i| if i == k { int(1) } else { int(0) }).collect::<Vec<_>>();
        assert!(t.is_stable(&e(2)).unwrap());
        assert!(!t.is_stable(&e(0)).unwrap());
        assert_eq!(t.find_cyclic_vector(1), Some(e(2)));
        assert_eq!(t.kernel_profile().unwrap().values(), &[1, 1, 1]);
        assert_eq!(t.socle_dim(), 1);
    }

    #[test]
    fn zero_tuple() {
        let t = CommutingTuple::zero(2, 1);
        assert_eq!(t.kernel_profile().unwrap().values(), &[1]);
        assert_eq!(t.socle_dim(), 1);
        assert!(t.is_stable(&[int(3)]).unwrap());
    }

    #[test]
    fn eigen_certificates() {
        let s = eigen_summary(&jordan(4), &[1, 4]).unwrap();
        assert!(!s.squarefree);
        assert_eq!(s.char_poly, UniPoly::monomial(4));
        assert_eq!(s.power_kernel_dims, vec![(1, 1), (4, 4)]);
        let diag = Matrix::from_fn(3, 3, |i, j| if i == j { int(i as i64) } else { int(0) });
        let s = eigen_summary(&diag, &[]).unwrap();
        assert!(s.squarefree);
        assert_eq!(s.distinct_eigenvalues, 3);
    }

    #[test]
    fn deformation_checks() {
        let t = CommutingTuple::new(vec![jordan(2), Matrix::zeros(2, 2)]).unwrap();
        let same = t.deformation_path(&[], &int(1), 7).unwrap();
        assert_eq!(same, t);
        let bad = t.deformation_path(&[Matrix::zeros(2, 2), Matrix::unit(2, 2, 0, 0)], &int(1), 7);
        assert!(matches!(bad, Err(CommutingError::NotCommuting(0, 1))));
    }
}
