//! Exact rational scalars, dense matrices, canonical subspaces and a sparse
//! incremental echelon form.
//!
//! Everything above this module reduces to rank and kernel computations over
//! the rationals. Dense work goes through [`Matrix`]; the large linearized
//! systems (tangent spaces, truncated ideal spans) go through
//! [`SparseEchelon`].

mod echelon;
mod matrix;
mod subspace;
mod unipoly;

pub use echelon::{SparseEchelon, SparseRow, TrackedEchelon};
pub use matrix::Matrix;
pub use subspace::Subspace;
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Failures of the linear algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("the zero polynomial has no squarefree decomposition")]
    ZeroPolynomial,
    #[error("ragged rows: row {row} has length {found}, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("invalid rational literal `{0}`")]
    BadScalar(String),
    #[error("matrix is singular")]
    Singular,
}

/// Builds the scalar `n`.
#[must_use]
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Builds the scalar `p/q`.
///
/// # Panics
/// Panics if `q` is zero.
#[must_use]
pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `-p` or `p/q` (surrounding whitespace allowed).
pub fn parse_scalar(text: &str) -> Result<Scalar, LinalgError> {
    let t = text.trim();
    let bad = || LinalgError::BadScalar(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Canonical text form: `p` or `p/q`.
#[must_use]
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `n!` as a scalar.
#[must_use]
pub fn factorial(n: u32) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Scalar::from_integer(acc)
}

/// Falling factorial `b (b-1) ... (b-a+1)`.
#[must_use]
pub fn falling_factorial(b: u32, a: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 0..a {
        acc *= BigInt::from(b - k);
    }
    acc
}

/// Multiplies a rational vector by the lcm of its denominators and divides by
/// the gcd of the resulting numerators. The result spans the same line.
#[must_use]
pub fn primitive_integer_vector(v: &[Scalar]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| (x.numer() * &l) / x.denom()).collect();
    let mut g = BigInt::zero();
    for x in &out {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut out {
            *x /= &g;
        }
    }
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -x.clone();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_round_trip() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(parse_scalar("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_scalar("3/-6").unwrap(), ratio(-1, 2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(5, 0), BigInt::from(1));
    }

    #[test]
    fn primitive_vector() {
        let v = vec![ratio(-1, 2), ratio(1, 3), int(0)];
        assert_eq!(primitive_integer_vector(&v), vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }
}
