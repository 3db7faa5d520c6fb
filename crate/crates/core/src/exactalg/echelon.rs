use num_traits::{One, Zero};

use super::Scalar;

/// Sparse vector as `(column, value)` pairs with strictly increasing columns
/// and no zero values.
pub type SparseRow = Vec<(usize, Scalar)>;

fn scatter(w: &mut Vec<Scalar>, row: &[(usize, Scalar)]) {
    if let Some(&(c, _)) = row.last() {
        if c >= w.len() {
            w.resize(c + 1, Scalar::zero());
        }
    }
    for (c, v) in row {
        w[*c] += v;
    }
}

fn gather(w: Vec<Scalar>) -> SparseRow {
    w.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
}

fn axpy(w: &mut [Scalar], f: &Scalar, row: &[(usize, Scalar)]) {
    for (c, v) in row {
        w[*c] -= f * v;
    }
}

/// Row echelon form built one row at a time.
///
/// The pivot of a row is its largest column. Stored rows are scaled so the
/// pivot entry is one and are never modified afterwards.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl SparseEchelon {
    #[must_use]
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    #[must_use]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Columns holding a pivot, in insertion order.
    #[must_use]
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.last().expect("stored rows are nonzero").0).collect()
    }

    #[must_use]
    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.get(col).is_some_and(Option::is_some)
    }

    fn grow(&mut self, ncols: usize) {
        if ncols > self.ncols {
            self.ncols = ncols;
            self.pivot_row.resize(ncols, None);
        }
    }

    fn reduce_dense(&self, w: &mut [Scalar]) {
        for c in (0..w.len()).rev() {
            if w[c].is_zero() {
                continue;
            }
            if let Some(Some(k)) = self.pivot_row.get(c) {
                let f = w[c].clone();
                axpy(w, &f, &self.rows[*k]);
            }
        }
    }

    /// Remainder of `row` after eliminating every pivot column.
    #[must_use]
    pub fn reduce(&self, row: &[(usize, Scalar)]) -> SparseRow {
        let mut w = vec![Scalar::zero(); self.ncols];
        scatter(&mut w, row);
        self.reduce_dense(&mut w);
        gather(w)
    }

    #[must_use]
    pub fn contains(&self, row: &[(usize, Scalar)]) -> bool {
        self.reduce(row).is_empty()
    }

    /// Adds `row` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, row: &[(usize, Scalar)]) -> bool {
        if let Some(&(c, _)) = row.last() {
            self.grow(c + 1);
        }
        let mut r = self.reduce(row);
        let Some((p, lead)) = r.last().cloned() else {
            return false;
        };
        if !lead.is_one() {
            let inv = Scalar::one() / lead;
            for (_, v) in &mut r {
                *v *= &inv;
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    /// Reduced row echelon basis: every row has a unit pivot and zeros in all
    /// other pivot columns. Rows are sorted by pivot.
    #[must_use]
    pub fn reduced_rows(&self) -> Vec<SparseRow> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.rows[k].last().expect("nonzero").0);
        let mut done = SparseEchelon::new(self.ncols);
        let mut out = Vec::with_capacity(order.len());
        for k in order {
            let row = &self.rows[k];
            let (p, _) = row.last().expect("nonzero").clone();
            let mut w = vec![Scalar::zero(); self.ncols];
            scatter(&mut w, row);
            w[p] = Scalar::zero();
            done.reduce_dense(&mut w);
            w[p] = Scalar::one();
            let reduced = gather(w);
            done.pivot_row[p] = Some(done.rows.len());
            done.rows.push(reduced.clone());
            out.push(reduced);
        }
        out
    }

    /// Basis of `{v : r . v = 0 for every stored row r}` in `Q^ncols`, one
    /// vector per non-pivot column.
    #[must_use]
    pub fn kernel_basis(&self) -> Vec<SparseRow> {
        let rref = self.reduced_rows();
        let mut by_free: Vec<SparseRow> = Vec::new();
        let mut index = vec![usize::MAX; self.ncols];
        for (c, slot) in index.iter_mut().enumerate() {
            if !self.is_pivot(c) {
                *slot = by_free.len();
                by_free.push(vec![(c, Scalar::one())]);
            }
        }
        for row in &rref {
            let p = row.last().expect("nonzero").0;
            for (c, v) in &row[..row.len() - 1] {
                by_free[index[*c]].push((p, -v.clone()));
            }
        }
        for v in &mut by_free {
            v.sort_by_key(|e| e.0);
        }
        by_free
    }

    /// Dimension of the kernel in `Q^ncols`.
    #[must_use]
    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }
}

/// Echelon form that remembers how each stored row was produced from the
/// accepted inputs, so vectors in the span can be written in terms of them.
#[derive(Clone, Debug, Default)]
pub struct TrackedEchelon {
    inner: SparseEchelon,
    combos: Vec<SparseRow>,
}

impl TrackedEchelon {
    #[must_use]
    pub fn new(ncols: usize) -> Self {
        Self { inner: SparseEchelon::new(ncols), combos: Vec::new() }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[must_use]
    pub fn echelon(&self) -> &SparseEchelon {
        &self.inner
    }

    fn reduce_tracked(&self, row: &[(usize, Scalar)]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut w = vec![Scalar::zero(); self.inner.ncols.max(row.last().map_or(0, |e| e.0 + 1))];
        scatter(&mut w, row);
        let mut t = vec![Scalar::zero(); self.combos.len()];
        for c in (0..w.len()).rev() {
            if w[c].is_zero() {
                continue;
            }
            if let Some(Some(k)) = self.inner.pivot_row.get(c) {
                let f = w[c].clone();
                axpy(&mut w, &f, &self.inner.rows[*k]);
                for (j, v) in &self.combos[*k] {
                    t[*j] += &f * v;
                }
            }
        }
        (w, t)
    }

    /// Accepts `row` if it is independent of the accepted inputs. Returns its
    /// index among accepted inputs.
    pub fn insert(&mut self, row: &[(usize, Scalar)]) -> Option<usize> {
        if let Some(&(c, _)) = row.last() {
            self.inner.grow(c + 1);
        }
        let (w, t) = self.reduce_tracked(row);
        let mut r = gather(w);
        let (p, lead) = r.last().cloned()?;
        let id = self.combos.len();
        let inv = Scalar::one() / lead;
        for (_, v) in &mut r {
            *v *= &inv;
        }
        let mut combo: SparseRow =
            t.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, -v * &inv)).collect();
        combo.push((id, inv));
        self.inner.pivot_row[p] = Some(self.inner.rows.len());
        self.inner.rows.push(r);
        self.combos.push(combo);
        Some(id)
    }

    /// Coefficients `c` with `row = sum_j c[j] * input_j`, or `None` if `row`
    /// is outside the span.
    #[must_use]
    pub fn express(&self, row: &[(usize, Scalar)]) -> Option<Vec<Scalar>> {
        let (w, t) = self.reduce_tracked(row);
        w.iter().all(Zero::is_zero).then_some(t)
    }
}
