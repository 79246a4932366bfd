//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Vectors are stored sparsely. A [`Subspace`] is kept in canonical reduced
//! row-echelon form (leading entry 1, pivot columns cleared in every other
//! row, rows sorted by pivot), so two subspaces are equal exactly when their
//! representations are equal.
//!
//! Most subspaces met in graded ideal computations are either small or have
//! small codimension. Sums and intersections therefore switch between the
//! basis side and the equation side (the annihilator under the standard dot
//! product), whichever is smaller.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

/// Integer shortcut for building rationals in code and tests.
pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Rational `num/den`. Panics when `den == 0`.
pub fn qr(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i, Q::one())],
        }
    }

    /// Builds a vector from unsorted entries; duplicates are summed, zeros dropped.
    pub fn from_entries(mut entries: Vec<(usize, Q)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Q)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w += v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        Self { entries: out }
    }

    /// Entries must already be sorted by index and nonzero.
    fn from_sorted(entries: Vec<(usize, Q)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        Self { entries }
    }

    pub fn from_dense(values: &[Q]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Q> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn trailing(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let (mut a, mut b) = (0, 0);
        let mut acc = Q::zero();
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            match i.cmp(j) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc += x * y;
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Q, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let left = self.entries.get(a);
            let right = other.entries.get(b);
            match (left, right) {
                (Some((i, x)), Some((j, y))) if i == j => {
                    let v = x + c * y;
                    if !v.is_zero() {
                        out.push((*i, v));
                    }
                    a += 1;
                    b += 1;
                }
                (Some((i, x)), Some((j, _))) if i < j => {
                    out.push((*i, x.clone()));
                    a += 1;
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a += 1;
                }
                (_, Some((j, y))) => {
                    out.push((*j, c * y));
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec { entries: out }
    }

    pub fn scaled(&self, c: &Q) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// Reindexes entries through `map`; the caller guarantees injectivity.
    pub fn remap(&self, mut map: impl FnMut(usize) -> usize) -> SparseVec {
        let entries = self.entries.iter().map(|(i, v)| (map(*i), v.clone())).collect();
        SparseVec::from_entries(entries)
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Q>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Q>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Q::one();
        }
        m
    }

    /// Builds from integer rows; all rows must share a length.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().map(|&x| q(x)));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub(crate) fn from_sparse_rows(cols: usize, rows: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            for (c, x) in v.entries() {
                m.entries[r * cols + c] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|r| SparseVec::from_dense(self.row(r))).collect()
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Incremental reduced echelon form. In reverse mode the pivot of a row is its
/// last nonzero column instead of its first.
struct Echelon {
    reverse: bool,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    fn new(reverse: bool) -> Self {
        Self {
            reverse,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    fn seeded(s: &Subspace) -> Self {
        let mut e = Self::new(false);
        for (k, r) in s.rows.iter().enumerate() {
            e.pivot_row.insert(r.leading().expect("nonzero basis row"), k);
        }
        e.rows = s.rows.clone();
        e
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = v.clone();
        for (col, val) in v.entries() {
            if let Some(&r) = self.pivot_row.get(col) {
                acc = acc.axpy(&-val, &self.rows[r]);
            }
        }
        acc
    }

    fn insert(&mut self, v: &SparseVec) -> bool {
        let mut w = self.reduce(v);
        let p = if self.reverse { w.trailing() } else { w.leading() };
        let Some(p) = p else { return false };
        let inv = w.get(p).expect("pivot entry").recip();
        w = w.scaled(&inv);
        for row in self.rows.iter_mut() {
            if let Some(x) = row.get(p) {
                let c = -x.clone();
                *row = row.axpy(&c, &w);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(w);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows sorted by pivot column.
    fn into_sorted(self) -> Vec<SparseVec> {
        let reverse = self.reverse;
        let mut rows = self.rows;
        rows.sort_by_key(|r| if reverse { r.trailing() } else { r.leading() });
        rows
    }
}

/// Reduced row-echelon form of `m` and its rank. The result keeps the shape of
/// `m`, with zero rows at the bottom.
pub fn rref(m: &QMatrix) -> (QMatrix, usize) {
    let mut e = Echelon::new(false);
    for r in m.sparse_rows() {
        e.insert(&r);
    }
    let rank = e.rank();
    let mut rows = e.into_sorted();
    rows.resize(m.rows(), SparseVec::new());
    (QMatrix::from_sparse_rows(m.cols(), &rows), rank)
}

/// Canonical basis of `{ v : m v = 0 }`.
pub fn kernel_basis(m: &QMatrix) -> Subspace {
    Subspace::from_equations(m.cols(), &m.sparse_rows())
}

/// A linear subspace of `Q^n` in canonical reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Self {
            ambient_dim: n,
            rows: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            ambient_dim: n,
            rows: (0..n).map(SparseVec::unit).collect(),
        }
    }

    /// Span of arbitrary vectors.
    pub fn span<'a>(n: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut e = Echelon::new(false);
        for v in vectors {
            debug_assert!(v.trailing().is_none_or(|t| t < n));
            e.insert(v);
            if e.rank() == n {
                return Self::full(n);
            }
        }
        Self {
            ambient_dim: n,
            rows: e.into_sorted(),
        }
    }

    /// Span of the coordinate vectors `e_i`, `i` in `coords`.
    pub fn coordinate(n: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = coords.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Self {
            ambient_dim: n,
            rows: idx.into_iter().map(SparseVec::unit).collect(),
        }
    }

    /// Wraps rows that are already in canonical form, up to row order.
    pub(crate) fn from_rref_rows(n: usize, mut rows: Vec<SparseVec>) -> Self {
        rows.sort_by_key(|r| r.leading());
        let s = Self { ambient_dim: n, rows };
        debug_assert!(s.is_canonical());
        s
    }

    /// Common solution space of the linear functionals `eqs`.
    pub fn from_equations(n: usize, eqs: &[SparseVec]) -> Self {
        let mut e = Echelon::new(true);
        for v in eqs {
            e.insert(v);
        }
        if e.rank() == 0 {
            return Self::full(n);
        }
        // Reverse echelon rows have pivot q_r = last nonzero column, so the
        // kernel vector of a free column j only touches j and pivots beyond j.
        let mut is_pivot = vec![false; n];
        for r in &e.rows {
            is_pivot[r.trailing().expect("nonzero")] = true;
        }
        let mut cols: HashMap<usize, Vec<(usize, Q)>> = HashMap::new();
        for r in &e.rows {
            let p = r.trailing().expect("nonzero");
            for (j, x) in r.entries() {
                if *j != p {
                    cols.entry(*j).or_default().push((p, -x.clone()));
                }
            }
        }
        let rows = (0..n)
            .filter(|j| !is_pivot[*j])
            .map(|j| {
                let mut entries = vec![(j, Q::one())];
                if let Some(extra) = cols.remove(&j) {
                    entries.extend(extra);
                }
                entries.sort_by_key(|(i, _)| *i);
                SparseVec::from_sorted(entries)
            })
            .collect();
        Self { ambient_dim: n, rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Basis as a dense matrix (one row per basis vector).
    pub fn basis(&self) -> QMatrix {
        QMatrix::from_sparse_rows(self.ambient_dim, &self.rows)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().filter_map(SparseVec::leading).collect()
    }

    /// Annihilator basis: one functional per non-pivot column.
    pub fn equations(&self) -> Vec<SparseVec> {
        if self.is_full() {
            return Vec::new();
        }
        let mut is_pivot = vec![false; self.ambient_dim];
        for p in self.pivots() {
            is_pivot[p] = true;
        }
        let mut cols: HashMap<usize, Vec<(usize, Q)>> = HashMap::new();
        for r in &self.rows {
            let p = r.leading().expect("nonzero");
            for (j, x) in r.entries() {
                if *j != p {
                    cols.entry(*j).or_default().push((p, -x.clone()));
                }
            }
        }
        (0..self.ambient_dim)
            .filter(|j| !is_pivot[*j])
            .map(|j| {
                let mut entries = vec![(j, Q::one())];
                if let Some(extra) = cols.remove(&j) {
                    entries.extend(extra);
                }
                SparseVec::from_entries(entries)
            })
            .collect()
    }

    fn row_with_pivot(&self, col: usize) -> Option<&SparseVec> {
        self.rows
            .binary_search_by_key(&Some(col), SparseVec::leading)
            .ok()
            .map(|k| &self.rows[k])
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = v.clone();
        for (col, val) in v.entries() {
            if let Some(r) = self.row_with_pivot(*col) {
                acc = acc.axpy(&-val, r);
            }
        }
        acc
    }

    pub fn contains_vector(&self, v: &SparseVec) -> bool {
        self.is_full() || self.reduce(v).is_zero()
    }

    /// `true` when `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        check_ambient(self, other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        if self.is_full() {
            return Ok(true);
        }
        Ok(other.rows.iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_ambient(self, other)?;
        let (a, b) = if self.codim() <= other.codim() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(a.sum_with_vectors(&b.rows))
    }

    /// `self + span(vectors)`.
    pub fn sum_with_vectors(&self, vectors: &[SparseVec]) -> Subspace {
        let n = self.ambient_dim;
        if self.is_full() || vectors.is_empty() {
            return self.clone();
        }
        if self.codim() < self.dim().max(vectors.len()) {
            // Equation side: combinations of the annihilator that also kill
            // every new vector.
            let eqs = self.equations();
            let k = eqs.len();
            let constraints: Vec<SparseVec> = vectors
                .iter()
                .map(|v| {
                    SparseVec::from_sorted(
                        eqs.iter()
                            .enumerate()
                            .map(|(i, e)| (i, e.dot(v)))
                            .filter(|(_, x)| !x.is_zero())
                            .collect(),
                    )
                })
                .collect();
            let combos = Subspace::from_equations(k, &constraints);
            let new_eqs: Vec<SparseVec> = combos
                .rows
                .iter()
                .map(|c| {
                    c.entries()
                        .iter()
                        .fold(SparseVec::new(), |acc, (i, x)| acc.axpy(x, &eqs[*i]))
                })
                .collect();
            Subspace::from_equations(n, &new_eqs)
        } else {
            let mut e = Echelon::seeded(self);
            for v in vectors {
                e.insert(v);
                if e.rank() == n {
                    return Self::full(n);
                }
            }
            Subspace {
                ambient_dim: n,
                rows: e.into_sorted(),
            }
        }
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        check_ambient(self, other)?;
        let n = self.ambient_dim;
        if self.is_full() || other.is_zero() {
            return Ok(other.clone());
        }
        if other.is_full() || self.is_zero() {
            return Ok(self.clone());
        }
        let small = self.dim().min(other.dim());
        if self.codim() + other.codim() <= small {
            let mut eqs = self.equations();
            eqs.extend(other.equations());
            return Ok(Subspace::from_equations(n, &eqs));
        }
        // Basis side: coefficients c with (sum c_i s_i) killed by the other
        // subspace's equations.
        let (s, o) = if self.dim() <= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let eqs = o.equations();
        let constraints: Vec<SparseVec> = eqs
            .iter()
            .map(|e| {
                SparseVec::from_sorted(
                    s.rows
                        .iter()
                        .enumerate()
                        .map(|(i, v)| (i, e.dot(v)))
                        .filter(|(_, x)| !x.is_zero())
                        .collect(),
                )
            })
            .collect();
        let combos = Subspace::from_equations(s.dim(), &constraints);
        let vectors: Vec<SparseVec> = combos
            .rows
            .iter()
            .map(|c| {
                c.entries()
                    .iter()
                    .fold(SparseVec::new(), |acc, (i, x)| acc.axpy(x, &s.rows[*i]))
            })
            .collect();
        Ok(Subspace::span(n, &vectors))
    }

    /// Checks the canonical-form invariant.
    pub fn is_canonical(&self) -> bool {
        let mut last = None;
        for r in &self.rows {
            let Some(p) = r.leading() else { return false };
            if last.is_some_and(|l| l >= p) || !r.get(p).is_some_and(|x| x.is_one()) {
                return false;
            }
            if r.trailing().is_some_and(|t| t >= self.ambient_dim) {
                return false;
            }
            last = Some(p);
        }
        let pivots = self.pivots();
        self.rows
            .iter()
            .all(|r| pivots.iter().filter(|p| r.get(**p).is_some()).count() == 1)
    }
}

fn check_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim,
            found: b.ambient_dim,
        });
    }
    Ok(())
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

/// `true` when `b ⊆ a`.
pub fn subspace_contains(a: &Subspace, b: &Subspace) -> Result<bool> {
    a.contains(b)
}
