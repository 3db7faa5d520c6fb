use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::rref_in_place;
use super::{format_scalar, LinalgError, Matrix, Scalar};

/// Linear subspace of `Q^ambient`, stored as its reduced row echelon basis.
///
/// The representation is canonical, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    #[must_use]
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    #[must_use]
    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        Self { ambient, basis, pivots: (0..ambient).collect() }
    }

    /// Span of the given vectors.
    ///
    /// # Panics
    /// Panics if a vector has the wrong length.
    #[must_use]
    pub fn from_vectors(ambient: usize, mut vectors: Vec<Vec<Scalar>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length differs from ambient dimension");
        let pivots = rref_in_place(&mut vectors, ambient);
        vectors.truncate(pivots.len());
        Self { ambient, basis: vectors, pivots }
    }

    #[must_use]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[must_use]
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    #[must_use]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` lies in the span.
    #[must_use]
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        self.check_len(v.len())?;
        Ok(self.reduce(v).iter().all(Zero::is_zero))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    #[must_use]
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.reduce(v).iter().all(Zero::is_zero) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_len(other.ambient)?;
        Ok(self.basis.iter().all(|v| other.reduce(v).iter().all(Zero::is_zero)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_len(other.ambient)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Self::from_vectors(self.ambient, vs))
    }

    /// Orthogonal complement with respect to the standard pairing.
    #[must_use]
    pub fn annihilator(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(self.ambient);
        }
        let m = Matrix::from_rows(self.basis.clone()).expect("rows share the ambient length");
        m.kernel_basis()
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_len(other.ambient)?;
        let joint = self.annihilator().sum(&other.annihilator())?;
        Ok(joint.annihilator())
    }

    /// Image of the subspace under the linear map `m` (acting on column vectors).
    pub fn image(&self, m: &Matrix) -> Result<Self, LinalgError> {
        self.check_len(m.cols())?;
        let vs = self.basis.iter().map(|v| m.mul_vec(v)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_vectors(m.rows(), vs))
    }

    /// Keeps only the listed coordinates.
    #[must_use]
    pub fn project(&self, coords: &[usize]) -> Self {
        let vs = self.basis.iter().map(|v| coords.iter().map(|&c| v[c].clone()).collect()).collect();
        Self::from_vectors(coords.len(), vs)
    }

    fn check_len(&self, n: usize) -> Result<(), LinalgError> {
        if n == self.ambient {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch { expected: self.ambient, found: n })
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient: usize,
    basis: Vec<Vec<String>>,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SubspaceRepr {
            ambient: self.ambient,
            basis: self.basis.iter().map(|v| v.iter().map(format_scalar).collect()).collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ratio};

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect()
    }

    #[test]
    fn coordinate_lines() {
        let a = Subspace::from_vectors(2, vec![e(2, 0)]);
        let b = Subspace::from_vectors(2, vec![e(2, 1)]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(2));
        assert_eq!(a.intersect(&b).unwrap(), Subspace::zero(2));
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn canonical_form() {
        let a = Subspace::from_vectors(3, vec![vec![int(1), int(2), int(3)], vec![int(0), int(1), int(1)]]);
        let b = Subspace::from_vectors(
            3,
            vec![vec![int(1), int(3), int(4)], vec![int(2), int(4), int(6)], vec![ratio(1, 2), int(2), ratio(5, 2)]],
        );
        assert_eq!(a, b);
        assert_eq!(a.coordinates(&[int(1), int(3), int(4)]).unwrap().len(), 2);
        assert!(a.coordinates(&e(3, 2)).is_none());
    }

    #[test]
    fn mismatch_errors() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
    }
}
