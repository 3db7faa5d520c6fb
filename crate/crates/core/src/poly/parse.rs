//! Recursive descent parser for the polynomial text grammar.
//!
//! ```text
//! list   := expr (',' expr)*
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'/'] factor)*      implicit '*' between factors
//! factor := atom ['^' (int | '(' int ')')]  '^(k)' is the divided power
//! atom   := int | var | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::One;

use super::{divided_power_of, Monomial, PolyError, Polynomial, Role};
use crate::exactalg::Scalar;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn small_int(&mut self) -> Result<u32, PolyError> {
        match self.digits() {
            Some(d) => d.parse().or_else(|_| self.err("exponent too large")),
            None => self.err("expected an exponent"),
        }
    }

    fn expr<R: Role>(&mut self) -> Result<Polynomial<R>, PolyError> {
        let mut acc = Polynomial::zero(self.n);
        let mut sign_neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term::<R>()?;
            acc = if sign_neg { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                sign_neg = false;
            } else if self.eat(b'-') {
                sign_neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'(' || c.is_ascii_alphabetic())
    }

    fn term<R: Role>(&mut self) -> Result<Polynomial<R>, PolyError> {
        let mut acc = self.factor::<R>()?;
        loop {
            if self.eat(b'*') {
                let f = self.factor::<R>()?;
                acc = &acc * &f;
            } else if self.eat(b'/') {
                let f = self.factor::<R>()?;
                let c = match (f.degree(), f.leading()) {
                    (Some(0), Some((_, c))) => c.clone(),
                    _ => return self.err("can only divide by a nonzero constant"),
                };
                acc = acc.scale(&(Scalar::one() / c));
            } else if self.starts_factor() {
                let f = self.factor::<R>()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<R: Role>(&mut self) -> Result<Polynomial<R>, PolyError> {
        let base = self.atom::<R>()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        if self.eat(b'(') {
            let k = self.small_int()?;
            if !self.eat(b')') {
                return self.err("expected `)` after divided power");
            }
            Ok(divided_power_of(&base, k))
        } else {
            let k = self.small_int()?;
            Ok(base.pow(k))
        }
    }

    fn atom<R: Role>(&mut self) -> Result<Polynomial<R>, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr::<R>()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("digit present");
                let v: BigInt = d.parse().expect("digits parse");
                Ok(Polynomial::constant(self.n, Scalar::from_integer(v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                let Some(idx) = self.digits() else {
                    self.pos = start;
                    return self.err("expected a variable like x1 or a1");
                };
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string();
                if c != R::PREFIX as u8 {
                    if c == b'x' || c == b'a' {
                        return Err(PolyError::WrongRole { name, expected: R::PREFIX });
                    }
                    self.pos = start;
                    return self.err(format!("unknown variable `{name}`"));
                }
                let i: usize = idx.parse().unwrap_or(usize::MAX);
                if i == 0 || i > self.n {
                    return Err(PolyError::VariableOutOfRange { name, n: self.n });
                }
                Ok(Polynomial::monomial(Monomial::var(self.n, i - 1)))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses one polynomial in `n` variables.
pub fn parse_polynomial<R: Role>(text: &str, n: usize) -> Result<Polynomial<R>, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, n };
    let e = p.expr::<R>()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses a comma-separated list of polynomials in `n` variables. Empty
/// input gives an empty list.
pub fn parse_list<R: Role>(text: &str, n: usize) -> Result<Vec<Polynomial<R>>, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, n };
    let mut out = Vec::new();
    if p.peek().is_none() {
        return Ok(out);
    }
    loop {
        out.push(p.expr::<R>()?);
        if p.eat(b',') {
            continue;
        }
        if p.peek().is_some() {
            return p.err("expected `,` or end of input");
        }
        return Ok(out);
    }
}

/// Largest 1-based variable index mentioned in `text`, for inferring `n`.
#[must_use]
pub fn max_variable_index(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_alphabetic() {
            let mut j = i + 1;
            let mut v = 0usize;
            while j < b.len() && b[j].is_ascii_digit() {
                v = v.saturating_mul(10).saturating_add(usize::from(b[j] - b'0'));
                j += 1;
            }
            best = best.max(v);
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{DualPolynomial, OperatorPolynomial};

    #[test]
    fn grammar() {
        let p: DualPolynomial = parse_polynomial("x1^(4) + x2^(2)", 2).unwrap();
        assert_eq!(p.to_string(), "1/24*x1^4 + 1/2*x2^2");
        let q: OperatorPolynomial = parse_polynomial("a2^2 - a1^4", 2).unwrap();
        assert_eq!(q.to_string(), "-a1^4 + a2^2");
        let r: DualPolynomial = parse_polynomial("-1/2 x1^2 + 3x1x4", 4).unwrap();
        assert_eq!(r.to_string(), "-1/2*x1^2 + 3*x1*x4");
        let l: Vec<DualPolynomial> = parse_list("x1*x2, x3*x4, x1*x3+x2*x4", 4).unwrap();
        assert_eq!(l.len(), 3);
        assert!(parse_list::<Dual>("  ", 2).unwrap().is_empty());
        assert!(parse_polynomial::<Dual>("2*(x1 - x2)^2", 2).unwrap().num_terms() == 3);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_polynomial::<Dual>("a1", 2), Err(PolyError::WrongRole { .. })));
        assert!(matches!(parse_polynomial::<Dual>("x3", 2), Err(PolyError::VariableOutOfRange { .. })));
        assert!(matches!(parse_polynomial::<Dual>("x1 +", 2), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_polynomial::<Dual>("x1/0", 2), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_polynomial::<Dual>("x1 y", 2), Err(PolyError::Parse { .. })));
        assert_eq!(max_variable_index("x1*x12 + x3"), 12);
    }

    use crate::poly::Dual;
}
