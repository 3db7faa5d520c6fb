use std::fmt;

use num_traits::{One, Zero};

use super::{format_scalar, LinalgError, Scalar};

/// Univariate polynomial in `t` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    #[must_use]
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    #[must_use]
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// `t^k`.
    #[must_use]
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Scalar::zero(); k + 1];
        c[k] = Scalar::one();
        Self { coeffs: c }
    }

    #[must_use]
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    #[must_use]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[must_use]
    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    #[must_use]
    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Scalar::from_integer(k.into())).collect())
    }

    #[must_use]
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = Scalar::one() / l;
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    ///
    /// # Panics
    /// Panics if `d` is zero.
    #[must_use]
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = Scalar::one() / d.leading().expect("nonzero");
        let mut r = self.coeffs.clone();
        let mut q = vec![Scalar::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().expect("nonempty") * &lead_inv;
            if !f.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &f * c;
                }
                q[k] = f;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    /// Monic greatest common divisor.
    #[must_use]
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True iff `gcd(p, p')` is constant, i.e. `p` has no repeated roots over
    /// an algebraic closure.
    pub fn is_squarefree(&self) -> Result<bool, LinalgError> {
        if self.is_zero() {
            return Err(LinalgError::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Result<Self, LinalgError> {
        if self.is_zero() {
            return Err(LinalgError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_rem(&g).0.monic())
    }

    #[must_use]
    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{}", format_scalar(&abs))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn squarefree_examples() {
        assert!(!UniPoly::monomial(2).is_squarefree().unwrap());
        assert!(p(&[0, -1, 1]).is_squarefree().unwrap());
        assert!(UniPoly::zero().is_squarefree().is_err());
        assert!(p(&[5]).is_squarefree().unwrap());
    }

    #[test]
    fn gcd_and_division() {
        // (t-1)^2 (t+2) and (t-1)(t+3)
        let a = p(&[1, -2, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).coeffs().len(), a.coeffs().len());
        let back = UniPoly::new(
            q.mul(&b)
                .coeffs()
                .iter()
                .zip(r.coeffs().iter().chain(std::iter::repeat(&Scalar::zero())))
                .map(|(x, y)| x + y)
                .collect(),
        );
        assert_eq!(back, a);
        assert_eq!(a.squarefree_part().unwrap(), p(&[-1, 1]).mul(&p(&[2, 1])));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 3, 1]).to_string(), "t^3 + 3*t^2 - 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}
