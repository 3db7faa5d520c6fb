//! Matrix tuples given as polynomial recipes in a base matrix `A_1(λ)` whose
//! entries are Laurent polynomials in `λ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::exactalg::{parse_scalar, Matrix, Scalar};

/// One term `λ^lambda_power M` of the base matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentTerm {
    pub lambda_power: i32,
    /// Row-major entries.
    pub matrix: Vec<String>,
}

/// One term `coeff λ^lambda_power A_1(λ)^power` of a recipe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeTerm {
    pub coeff: String,
    #[serde(default)]
    pub lambda_power: i32,
    pub power: u32,
}

/// `A_1(λ) = sum λ^e M_e` and `A_i(λ) = sum_t c_t λ^{e_t} A_1(λ)^{k_t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    pub base: Vec<LaurentTerm>,
    /// One polynomial per matrix of the tuple, the first usually `A_1` itself.
    pub polys: Vec<Vec<RecipeTerm>>,
}

/// Matrix-valued Laurent polynomial in `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    d: usize,
    terms: BTreeMap<i32, Matrix>,
}

impl LaurentMatrix {
    fn zero(d: usize) -> Self {
        Self { d, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, e: i32, m: Matrix) {
        let sum = match self.terms.remove(&e) {
            Some(prev) => &prev + &m,
            None => m,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.d);
        for (e, a) in &self.terms {
            for (f, b) in &other.terms {
                out.add_term(e + f, a * b);
            }
        }
        out
    }

    fn scaled_shifted(&self, c: &Scalar, shift: i32) -> Self {
        let mut out = Self::zero(self.d);
        for (e, m) in &self.terms {
            out.add_term(e + shift, m.scale(c));
        }
        out
    }

    /// Lowest power of `λ` with a nonzero coefficient.
    #[must_use]
    pub fn order(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// True iff no negative power of `λ` survives.
    #[must_use]
    pub fn is_polynomial(&self) -> bool {
        self.order().is_none_or(|e| e >= 0)
    }

    /// Value at `λ`. At `λ = 0` this is the limit, which exists only for a
    /// polynomial.
    pub fn at(&self, lambda: &Scalar) -> Result<Matrix, CatalogError> {
        if lambda.is_zero() {
            if let Some(e) = self.order().filter(|e| *e < 0) {
                return Err(CatalogError::NoLimit(e));
            }
            return Ok(self.terms.get(&0).cloned().unwrap_or_else(|| Matrix::zeros(self.d, self.d)));
        }
        let mut out = Matrix::zeros(self.d, self.d);
        for (e, m) in &self.terms {
            let p = if *e >= 0 { pow(lambda, *e as u32) } else { pow(lambda, e.unsigned_abs()).recip() };
            out = &out + &m.scale(&p);
        }
        Ok(out)
    }
}

fn pow(x: &Scalar, k: u32) -> Scalar {
    (0..k).fold(Scalar::one(), |acc, _| acc * x)
}

impl Recipe {
    /// Expands every polynomial into a Laurent matrix.
    pub fn expand(&self, d: usize) -> Result<Vec<LaurentMatrix>, CatalogError> {
        let mut base = LaurentMatrix::zero(d);
        for t in &self.base {
            let entries = t.matrix.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>()?;
            base.add_term(t.lambda_power, Matrix::from_row_major(d, d, entries)?);
        }
        let top = self.polys.iter().flatten().map(|t| t.power).max().unwrap_or(0);
        let mut powers = vec![LaurentMatrix { d, terms: BTreeMap::from([(0, Matrix::identity(d))]) }];
        for k in 1..=top as usize {
            powers.push(powers[k - 1].mul(&base));
        }
        self.polys
            .iter()
            .map(|poly| {
                let mut acc = LaurentMatrix::zero(d);
                for t in poly {
                    let c = parse_scalar(&t.coeff)?;
                    for (e, m) in powers[t.power as usize].scaled_shifted(&c, t.lambda_power).terms {
                        acc.add_term(e, m);
                    }
                }
                Ok(acc)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn term(coeff: &str, lambda_power: i32, power: u32) -> RecipeTerm {
        RecipeTerm { coeff: coeff.into(), lambda_power, power }
    }

    #[test]
    fn limits_and_values() {
        // A(λ) = λ I on a 1x1 space; A^2/λ = λ has limit 0, A/λ^2 = 1/λ has none
        let recipe = Recipe {
            base: vec![LaurentTerm { lambda_power: 1, matrix: vec!["1".into()] }],
            polys: vec![vec![term("1", -1, 2)], vec![term("1", -2, 1)]],
        };
        let exp = recipe.expand(1).unwrap();
        assert!(exp[0].is_polynomial());
        assert_eq!(exp[0].at(&int(0)).unwrap(), Matrix::zeros(1, 1));
        assert_eq!(exp[0].at(&int(3)).unwrap(), Matrix::from_i64(&[&[3]]));
        assert!(!exp[1].is_polynomial());
        assert!(matches!(exp[1].at(&int(0)), Err(CatalogError::NoLimit(-1))));
        assert_eq!(exp[1].at(&int(2)).unwrap().get(0, 0), &(int(1) / int(2)));
    }

    #[test]
    fn cancelling_terms_vanish() {
        let recipe = Recipe {
            base: vec![LaurentTerm { lambda_power: 0, matrix: vec!["2".into()] }],
            polys: vec![vec![term("1", 0, 1), term("-2", 0, 0)]],
        };
        let exp = recipe.expand(1).unwrap();
        assert_eq!(exp[0].order(), None);
    }
}
