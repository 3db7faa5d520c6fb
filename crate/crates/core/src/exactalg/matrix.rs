use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{format_scalar, int, parse_scalar, LinalgError, Scalar, Subspace, UniPoly};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    /// Matrix with a single nonzero entry `1` at `(i, j)`.
    #[must_use]
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(LinalgError::Ragged { row: i, expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    /// Integer matrix from nested literals, mostly for tests and fixtures.
    #[must_use]
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| int(rows[i][j]))
    }

    /// Parses entries written as rational literals.
    pub fn from_strings(rows: usize, cols: usize, entries: &[String]) -> Result<Self, LinalgError> {
        let data = entries.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>()?;
        Self::from_row_major(rows, cols, data)
    }

    #[must_use]
    pub fn to_strings(&self) -> Vec<String> {
        self.data.iter().map(format_scalar).collect()
    }

    /// Places `blocks[(bi, bj)]` at the block offsets given by `sizes`.
    pub fn from_blocks(sizes: &[usize], blocks: &[((usize, usize), Matrix)]) -> Result<Self, LinalgError> {
        let d: usize = sizes.iter().sum();
        let offsets: Vec<usize> = sizes
            .iter()
            .scan(0, |acc, s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        let mut m = Self::zeros(d, d);
        for ((bi, bj), b) in blocks {
            if b.rows != sizes[*bi] || b.cols != sizes[*bj] {
                return Err(LinalgError::DimensionMismatch {
                    expected: sizes[*bi] * sizes[*bj],
                    found: b.rows * b.cols,
                });
            }
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(offsets[*bi] + i, offsets[*bj] + j, b.get(i, j).clone());
                }
            }
        }
        Ok(m)
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[must_use]
    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    #[must_use]
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    #[must_use]
    pub fn scale(&self, c: &Scalar) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: u32) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    pub fn trace(&self) -> Result<Scalar, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    /// Rank over the rationals by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first scaled to a primitive integer vector; the elimination
    /// then divides exactly by the previous pivot, so every intermediate entry
    /// is an integer minor of the scaled matrix.
    #[must_use]
    #[allow(clippy::needless_range_loop)]
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| super::primitive_integer_vector(self.row(i)))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let m = a.len();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, p);
            let pivot = a[rank][col].clone();
            for r in rank + 1..m {
                let factor = a[r][col].clone();
                for c in col..self.cols {
                    let v = (&pivot * &a[r][c] - &factor * &a[rank][c]) / &prev;
                    a[r][c] = v;
                }
            }
            // columns left of `col` in rows below are already zero
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form and the pivot columns.
    #[must_use]
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref_in_place(&mut rows, self.cols);
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, v) in r.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        (out, pivots)
    }

    /// Canonical basis of the right kernel `{v : M v = 0}`.
    #[must_use]
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut vectors = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free).clone();
            }
            vectors.push(v);
        }
        Subspace::from_vectors(self.cols, vectors)
    }

    /// Row space as a canonical subspace.
    #[must_use]
    pub fn row_space(&self) -> Subspace {
        Subspace::from_vectors(self.cols, (0..self.rows).map(|i| self.row(i).to_vec()).collect())
    }

    /// Column space as a canonical subspace.
    #[must_use]
    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }

    /// Monic characteristic polynomial `det(t I - M)` by Faddeev-LeVerrier.
    pub fn char_poly(&self) -> Result<UniPoly, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self * &m;
            for i in 0..n {
                let idx = i * n + i;
                next.data[idx] += &coeffs[n - k + 1];
            }
            let am = self * &next;
            coeffs[n - k] = -am.trace()? / int(k as i64);
            m = next;
        }
        Ok(UniPoly::new(coeffs))
    }

    /// `dim ker(M^k)`.
    pub fn power_kernel_dim(&self, k: u32) -> Result<usize, LinalgError> {
        let p = self.pow(k)?;
        Ok(self.cols - p.rank())
    }

    /// Evaluates a univariate polynomial at this matrix.
    pub fn eval_poly(&self, p: &UniPoly) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Self::zeros(self.rows, self.cols);
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..self.rows {
                let idx = i * self.cols + i;
                acc.data[idx] += c;
            }
        }
        Ok(acc)
    }

    /// `P^{-1}`, or `None` when singular.
    #[must_use]
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| rows[i][n + j].clone()))
    }

    /// Conjugate `P^{-1} M P`.
    pub fn conjugate(&self, p: &Self, p_inv: &Self) -> Result<Self, LinalgError> {
        p_inv.checked_mul(self)?.checked_mul(p)
    }
}

/// In-place Gauss-Jordan over the rationals; returns pivot columns in order.
pub(crate) fn rref_in_place(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Scalar::one() / &rows[r][c];
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// # Panics
    /// Panics on incompatible shapes; use [`Matrix::checked_mul`] otherwise.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_add(&-rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i).iter().map(format_scalar).collect::<Vec<_>>()))
            .finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows).map(|i| self.row(i).iter().map(format_scalar).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Serialized as `{"rows", "cols", "entries": [row-major strings]}`.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr { rows: self.rows, cols: self.cols, entries: self.to_strings() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        Matrix::from_strings(r.rows, r.cols, &r.entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    fn jordan(n: usize) -> Matrix {
        Matrix::from_fn(n, n, |i, j| if j == i + 1 { int(1) } else { int(0) })
    }

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(Matrix::identity(5).rank(), 5);
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 1], &[2, 2]]).rank(), 1);
        assert_eq!(Matrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn bareiss_matches_gauss_jordan() {
        let m = Matrix::from_fn(6, 7, |i, j| ratio(((i * 7 + j * 3) % 5) as i64 - 2, (j % 3 + 1) as i64));
        let (_, pivots) = m.rref();
        assert_eq!(m.rank(), pivots.len());
        let singular = Matrix::from_i64(&[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(singular.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(4).kernel_basis().dim(), 0);
        assert_eq!(Matrix::zeros(2, 3).kernel_basis().dim(), 3);
        let k = Matrix::from_i64(&[&[1, 1], &[2, 2]]).kernel_basis();
        assert_eq!(k, Subspace::from_vectors(2, vec![vec![int(1), int(-1)]]));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = Matrix::from_fn(4, 6, |i, j| int(((i + 2 * j) % 3) as i64 - 1));
        let k = m.kernel_basis();
        assert_eq!(m.rank() + k.dim(), 6);
        for v in k.basis() {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn char_poly_examples() {
        let p = Matrix::identity(3).char_poly().unwrap();
        // (t-1)^3 = t^3 - 3t^2 + 3t - 1
        assert_eq!(p, UniPoly::new(vec![int(-1), int(3), int(-3), int(1)]));
        assert_eq!(jordan(4).char_poly().unwrap(), UniPoly::monomial(4));
        assert!(Matrix::zeros(2, 3).char_poly().is_err());
    }

    #[test]
    fn power_kernels() {
        assert_eq!(jordan(3).power_kernel_dim(3).unwrap(), 3);
        assert_eq!(jordan(3).power_kernel_dim(1).unwrap(), 1);
        assert_eq!(Matrix::identity(4).power_kernel_dim(7).unwrap(), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn blocks_and_serde() {
        let m = Matrix::from_blocks(&[1, 2], &[((0, 1), Matrix::from_i64(&[&[1, 2]])), ((1, 1), Matrix::identity(2))])
            .unwrap();
        assert_eq!(m, Matrix::from_i64(&[&[0, 1, 2], &[0, 1, 0], &[0, 0, 1]]));
        let json = serde_json::to_string(&m.scale(&ratio(1, 2))).unwrap();
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m.scale(&ratio(1, 2)));
    }
}
