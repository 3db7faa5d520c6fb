//! Tangent spaces to the variety of commuting tuples.
//!
//! At `(A_1..A_n)` the tangent space consists of `(Z_1..Z_n)` with
//! `A_i Z_j + Z_i A_j = A_j Z_i + Z_j A_i` for all `i < j`. Unknown `Z_i[r][c]`
//! has global index `i d^2 + r d + c`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{CommutingError, CommutingTuple};
use crate::exactalg::{Matrix, Scalar, SparseEchelon, SparseRow};
use crate::random::DEFAULT_SEED;

/// Which entries of each `Z_i` may be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeConstraint {
    d: usize,
    free: Vec<Vec<bool>>,
}

impl ShapeConstraint {
    /// The same `d x d` pattern (row-major, `true` = free) for all `n` matrices.
    #[must_use]
    pub fn uniform(n: usize, d: usize, pattern: Vec<bool>) -> Self {
        assert_eq!(pattern.len(), d * d);
        Self { d, free: vec![pattern; n] }
    }

    /// One pattern per matrix.
    #[must_use]
    pub fn per_matrix(d: usize, patterns: Vec<Vec<bool>>) -> Self {
        assert!(patterns.iter().all(|p| p.len() == d * d));
        Self { d, free: patterns }
    }

    /// Pattern from a block decomposition of size `sizes`: the listed
    /// `(block_row, block_col)` blocks are free, the rest is zero.
    #[must_use]
    pub fn from_blocks(sizes: &[usize], free_blocks: &[(usize, usize)]) -> Vec<bool> {
        let d: usize = sizes.iter().sum();
        let mut block_of = Vec::with_capacity(d);
        for (b, &s) in sizes.iter().enumerate() {
            block_of.extend(std::iter::repeat_n(b, s));
        }
        let mut p = vec![false; d * d];
        for r in 0..d {
            for c in 0..d {
                p[r * d + c] = free_blocks.contains(&(block_of[r], block_of[c]));
            }
        }
        p
    }

    #[must_use]
    pub fn is_free(&self, i: usize, r: usize, c: usize) -> bool {
        self.free[i][r * self.d + c]
    }

    /// Global indices of the free unknowns.
    #[must_use]
    pub fn free_indices(&self) -> Vec<usize> {
        let dd = self.d * self.d;
        self.free
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.iter().enumerate().filter(|(_, f)| **f).map(move |(k, _)| i * dd + k))
            .collect()
    }

    /// True iff every entry outside the pattern is zero.
    #[must_use]
    pub fn admits(&self, matrices: &[Matrix]) -> bool {
        matrices.len() == self.free.len()
            && matrices.iter().enumerate().all(|(i, m)| {
                m.rows() == self.d
                    && m.cols() == self.d
                    && (0..self.d).all(|r| (0..self.d).all(|c| self.is_free(i, r, c) || m.get(r, c).is_zero()))
            })
    }

    /// Copies of `matrices` with every entry outside the pattern set to zero.
    #[must_use]
    pub fn mask(&self, matrices: &[Matrix]) -> Vec<Matrix> {
        matrices
            .iter()
            .enumerate()
            .map(|(i, m)| {
                Matrix::from_fn(m.rows(), m.cols(), |r, c| {
                    if self.is_free(i, r, c) {
                        m.get(r, c).clone()
                    } else {
                        Scalar::zero()
                    }
                })
            })
            .collect()
    }

    fn fits(&self, t: &CommutingTuple) -> bool {
        self.d == t.d() && self.free.len() == t.n()
    }
}

struct TangentSystem {
    free: Vec<usize>,
    echelon: SparseEchelon,
}

#[allow(clippy::needless_range_loop)]
fn assemble(t: &CommutingTuple, shape: Option<&ShapeConstraint>) -> Result<TangentSystem, CommutingError> {
    let (n, d) = (t.n(), t.d());
    let dd = d * d;
    let free: Vec<usize> = match shape {
        Some(s) if !s.fits(t) => return Err(CommutingError::ShapeMismatch),
        Some(s) => s.free_indices(),
        None => (0..n * dd).collect(),
    };
    let mut local = vec![usize::MAX; n * dd];
    for (k, &g) in free.iter().enumerate() {
        local[g] = k;
    }
    // Sparse columns and rows of every A_i.
    let nz_rows: Vec<Vec<Vec<(usize, &Scalar)>>> = t
        .matrices()
        .iter()
        .map(|a| {
            (0..d).map(|r| (0..d).filter(|&k| !a.get(r, k).is_zero()).map(|k| (k, a.get(r, k))).collect()).collect()
        })
        .collect();
    let nz_cols: Vec<Vec<Vec<(usize, &Scalar)>>> = t
        .matrices()
        .iter()
        .map(|a| {
            (0..d).map(|c| (0..d).filter(|&k| !a.get(k, c).is_zero()).map(|k| (k, a.get(k, c))).collect()).collect()
        })
        .collect();
    let mut echelon = SparseEchelon::new(free.len());
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    let push = |acc: &mut BTreeMap<usize, Scalar>, g: usize, v: &Scalar, sign: bool| {
        let k = local[g];
        if k == usize::MAX {
            return;
        }
        let e = acc.entry(k).or_insert_with(Scalar::zero);
        if sign {
            *e += v;
        } else {
            *e -= v;
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            for r in 0..d {
                for c in 0..d {
                    acc.clear();
                    // A_i Z_j
                    for &(k, v) in &nz_rows[i][r] {
                        push(&mut acc, j * dd + k * d + c, v, true);
                    }
                    // Z_i A_j
                    for &(k, v) in &nz_cols[j][c] {
                        push(&mut acc, i * dd + r * d + k, v, true);
                    }
                    // - A_j Z_i
                    for &(k, v) in &nz_rows[j][r] {
                        push(&mut acc, i * dd + k * d + c, v, false);
                    }
                    // - Z_j A_i
                    for &(k, v) in &nz_cols[i][c] {
                        push(&mut acc, j * dd + r * d + k, v, false);
                    }
                    let row: SparseRow =
                        acc.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect();
                    if !row.is_empty() {
                        echelon.insert(&row);
                    }
                }
            }
        }
    }
    Ok(TangentSystem { free, echelon })
}

/// Dimension of the tangent space at `t`, optionally restricted to a shape.
pub fn tangent_space_dim(t: &CommutingTuple, shape: Option<&ShapeConstraint>) -> Result<usize, CommutingError> {
    Ok(assemble(t, shape)?.echelon.nullity())
}

/// Basis of the tangent space, each element an `n`-tuple of matrices.
pub fn tangent_space_basis(
    t: &CommutingTuple,
    shape: Option<&ShapeConstraint>,
) -> Result<Vec<Vec<Matrix>>, CommutingError> {
    let (n, d) = (t.n(), t.d());
    let sys = assemble(t, shape)?;
    Ok(sys
        .echelon
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut ms = vec![Matrix::zeros(d, d); n];
            for (k, x) in v {
                let g = sys.free[k];
                ms[g / (d * d)].set((g % (d * d)) / d, g % d, x);
            }
            ms
        })
        .collect())
}

/// Dimension of the image of the (shape-restricted) tangent space under the
/// coordinate projection onto the free entries of `onto`.
pub fn projected_tangent_dim(
    t: &CommutingTuple,
    shape: Option<&ShapeConstraint>,
    onto: &ShapeConstraint,
) -> Result<usize, CommutingError> {
    if !onto.fits(t) {
        return Err(CommutingError::ShapeMismatch);
    }
    let sys = assemble(t, shape)?;
    let targets = onto.free_indices();
    let mut target_pos = vec![usize::MAX; t.n() * t.d() * t.d()];
    for (k, &g) in targets.iter().enumerate() {
        target_pos[g] = k;
    }
    let mut image = SparseEchelon::new(targets.len());
    for v in sys.echelon.kernel_basis() {
        let mut row: SparseRow = v
            .into_iter()
            .filter_map(|(k, x)| (target_pos[sys.free[k]] != usize::MAX).then(|| (target_pos[sys.free[k]], x)))
            .collect();
        row.sort_by_key(|e| e.0);
        image.insert(&row);
    }
    Ok(image.rank())
}

/// `d^2 + (n-1) d`, the dimension of the closure of diagonalizable tuples.
#[must_use]
pub fn principal_component_dim(d: usize, n: usize) -> usize {
    d * d + (n - 1) * d
}

/// Tangent dimension of the Hilbert scheme of `d` points at the algebra of
/// `t`: `d - d^2 + dim T`. Requires a cyclic vector.
pub fn hilb_tangent_dim(t: &CommutingTuple) -> Result<usize, CommutingError> {
    if t.find_cyclic_vector(DEFAULT_SEED).is_none() {
        return Err(CommutingError::NoCyclicVector);
    }
    let d = t.d();
    Ok(d + tangent_space_dim(t, None)? - d * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn diag(vals: &[i64]) -> Matrix {
        let d = vals.len();
        Matrix::from_fn(d, d, |i, j| if i == j { int(vals[i]) } else { int(0) })
    }

    #[test]
    fn single_matrix_has_full_tangent() {
        let t = CommutingTuple::new(vec![diag(&[1, 2, 3])]).unwrap();
        assert_eq!(tangent_space_dim(&t, None).unwrap(), 9);
    }

    #[test]
    fn distinct_points_are_smooth() {
        // three distinct points in the plane
        let t = CommutingTuple::new(vec![diag(&[0, 1, 2]), diag(&[5, 3, 0])]).unwrap();
        assert_eq!(tangent_space_dim(&t, None).unwrap(), principal_component_dim(3, 2));
        assert_eq!(hilb_tangent_dim(&t).unwrap(), 6);
        assert_eq!(tangent_space_basis(&t, None).unwrap().len(), 12);
    }

    #[test]
    fn basis_solves_equations() {
        let j = Matrix::from_fn(3, 3, |i, k| if k == i + 1 { int(1) } else { int(0) });
        let t = CommutingTuple::new(vec![j.clone(), &j * &j]).unwrap();
        for z in tangent_space_basis(&t, None).unwrap() {
            let (a, b) = (t.matrix(0), t.matrix(1));
            let lhs = &(a * &z[1]) + &(&z[0] * b);
            let rhs = &(b * &z[0]) + &(&z[1] * a);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn shapes_restrict_and_project() {
        let t = CommutingTuple::zero(2, 2);
        let upper = ShapeConstraint::uniform(2, 2, vec![false, true, false, false]);
        assert_eq!(tangent_space_dim(&t, Some(&upper)).unwrap(), 2);
        assert_eq!(projected_tangent_dim(&t, None, &upper).unwrap(), 2);
        assert_eq!(ShapeConstraint::from_blocks(&[1, 1], &[(0, 1)]), vec![false, true, false, false]);
    }
}
