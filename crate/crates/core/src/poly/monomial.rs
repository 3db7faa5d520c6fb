use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

/// Exponent vector `x^e = x1^e1 ... xn^en`.
///
/// Ordered by degree reverse lexicographic order with `x1 > x2 > ... > xn`:
/// higher degree wins, and at equal degree the monomial with the smaller
/// exponent in the last differing variable is larger.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    #[must_use]
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    #[must_use]
    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    /// The variable with 0-based index `i`.
    #[must_use]
    pub fn var(n: usize, i: usize) -> Self {
        Self::var_pow(n, i, 1)
    }

    #[must_use]
    pub fn var_pow(n: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; n];
        exps[i] = e;
        Self { exps }
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[must_use]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[must_use]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    #[must_use]
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Weighted degree `sum w_i e_i`.
    #[must_use]
    pub fn weight(&self, w: &[i64]) -> i64 {
        self.exps.iter().zip(w).map(|(&e, &wi)| i64::from(e) * wi).sum()
    }

    #[must_use]
    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        Self { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    #[must_use]
    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` if `self` divides `other`.
    #[must_use]
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        self.divides(other).then(|| Self { exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect() })
    }

    /// `self * x_i`.
    #[must_use]
    pub fn times_var(&self, i: usize) -> Self {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Self { exps }
    }

    /// Text form using the given variable prefix, e.g. `x1^2*x3`.
    #[must_use]
    pub fn render(&self, prefix: char) -> String {
        let mut s = String::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            let _ = write!(s, "{prefix}{}", i + 1);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        self.exps.len().cmp(&other.exps.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `n` variables, largest first.
#[must_use]
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Dense numbering of all monomials up to a degree bound, ascending in the
/// monomial order. Extending the bound keeps existing indices.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    n: usize,
    max_degree: u32,
    monomials: Vec<Monomial>,
    starts: Vec<usize>,
    lookup: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    #[must_use]
    pub fn new(n: usize, max_degree: u32) -> Self {
        let mut idx = Self { n, max_degree: 0, monomials: Vec::new(), starts: Vec::new(), lookup: HashMap::new() };
        idx.push_degree(0);
        idx.extend_to(max_degree);
        idx
    }

    fn push_degree(&mut self, d: u32) {
        self.starts.push(self.monomials.len());
        let mut ms = monomials_of_degree(self.n, d);
        ms.reverse();
        for m in ms {
            self.lookup.insert(m.clone(), self.monomials.len());
            self.monomials.push(m);
        }
        self.max_degree = d;
    }

    pub fn extend_to(&mut self, max_degree: u32) {
        while self.max_degree < max_degree {
            self.push_degree(self.max_degree + 1);
        }
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    #[must_use]
    pub fn index(&self, m: &Monomial) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    #[must_use]
    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    #[must_use]
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Index range of the monomials of degree `d`.
    #[must_use]
    pub fn degree_range(&self, d: u32) -> std::ops::Range<usize> {
        let d = d as usize;
        let end = self.starts.get(d + 1).copied().unwrap_or(self.monomials.len());
        self.starts[d]..end
    }

    /// Number of monomials of degree at most `d`.
    #[must_use]
    pub fn count_up_to(&self, d: u32) -> usize {
        self.degree_range(d).end
    }
}
