//! Dense and sparse exact matrices, reduced echelon forms, kernels and
//! cokernel complements.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, Scalar};

/// Sorted `(column, value)` pairs with nonzero values.
pub type SparseRow<T> = Vec<(usize, T)>;

/// Row-major dense matrix. Zero rows or zero columns are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// `c·I_n`.
    pub fn scalar(n: usize, c: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Builds from explicit rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: r,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| T::from_i64(x))
            })
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    /// `(row, col, value)` for every entry.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, x)| (k / self.cols.max(1), k % self.cols.max(1), x))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .iter()
                .all(|(i, j, x)| if i == j { x.is_one() } else { x.is_zero() })
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
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
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T, op: &str) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!(
                "cannot {op} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone(), "add")
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone(), "subtract")
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Kronecker product: entry `a_ij` of `self` scales a copy of `other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c);
        for (i, j, a) in self.iter() {
            if a.is_zero() {
                continue;
            }
            for (k, l, b) in other.iter() {
                if !b.is_zero() {
                    out.data[(i * other.rows + k) * c + j * other.cols + l] = a.clone() * b.clone();
                }
            }
        }
        out
    }

    /// `[[a, b], [c, d]]`.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::Dimension("incompatible block shapes".into()));
        }
        let mut out = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        out.paste(0, 0, a);
        out.paste(0, a.cols, b);
        out.paste(a.rows, 0, c);
        out.paste(a.rows, a.cols, d);
        Ok(out)
    }

    /// Block diagonal `diag(a, b)`.
    pub fn direct_sum(a: &Self, b: &Self) -> Self {
        let mut out = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        out.paste(0, 0, a);
        out.paste(a.rows, a.cols, b);
        out
    }

    fn paste(&mut self, r0: usize, c0: usize, m: &Self) {
        for (i, j, x) in m.iter() {
            self.data[(r0 + i) * self.cols + c0 + j] = x.clone();
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix<T> {
        let rows = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            cols: self.cols,
            rows,
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let r = self.to_sparse().rref();
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, row) in r.rows.iter().enumerate() {
            for (j, x) in row {
                out.set(i, *j, x.clone());
            }
        }
        (out, r.pivots)
    }

    pub fn rank(&self) -> usize {
        self.to_sparse().rank()
    }

    /// Basis of `{x : Ax = 0}`, one vector per free column of the RREF.
    pub fn nullspace_basis(&self) -> Vec<Vec<T>> {
        self.to_sparse().nullspace_basis()
    }

    /// Standard unit vectors completing the column space of `self` to
    /// `k^rows`; they are the non-pivot positions of `rref(selfᵀ)`.
    pub fn cokernel_basis(&self) -> Vec<Vec<T>> {
        let pivots = self.transpose().to_sparse().rref().pivots;
        let mut is_pivot = vec![false; self.rows];
        for p in pivots {
            is_pivot[p] = true;
        }
        (0..self.rows)
            .filter(|&i| !is_pivot[i])
            .map(|i| unit_vector(self.rows, i))
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = Self::block2(
            self,
            &Self::identity(n),
            &Self::zeros(0, n),
            &Self::zeros(0, n),
        )?;
        let (r, pivots) = aug.rref();
        if pivots.iter().take_while(|&&p| p < n).count() < n {
            return Err(Error::Singular(format!(
                "{n}x{n} matrix has rank below {n}"
            )));
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Some solution of `self · x = b`, or `None` if inconsistent. Free
    /// variables are set to 1.
    pub fn solve(&self, b: &[T]) -> Result<Option<Vec<T>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = Self::block2(
            self,
            &Self::from_columns(&[b.to_vec()], self.rows),
            &Self::zeros(0, self.cols),
            &Self::zeros(0, 1),
        )?;
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![T::one(); self.cols];
        for &p in &pivots {
            x[p] = T::zero();
        }
        for (i, &p) in pivots.iter().enumerate() {
            let mut v = r.get(i, self.cols).clone();
            for j in p + 1..self.cols {
                if !pivots.contains(&j) {
                    v = v - r.get(i, j).clone();
                }
            }
            x[p] = v;
        }
        Ok(Some(x))
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&format_scalar(x))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

pub fn unit_vector<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

/// Matrix stored as sparse rows; the elimination kernel works here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    cols: usize,
    rows: Vec<SparseRow<T>>,
}

/// Reduced row echelon form: nonzero rows first, each with a leading 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<T> {
    pub cols: usize,
    pub rows: Vec<SparseRow<T>>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    /// Appends a row given as unsorted `(col, value)` pairs; duplicate
    /// columns are summed and zeros dropped.
    pub fn push_entries(&mut self, entries: impl IntoIterator<Item = (usize, T)>) {
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (j, x) in entries {
            debug_assert!(j < self.cols);
            if x.is_zero() {
                continue;
            }
            let e = acc.entry(j).or_insert_with(T::zero);
            *e = e.clone() + x;
        }
        self.rows
            .push(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect());
    }

    pub fn push_dense(&mut self, row: &[T]) {
        self.push_entries(row.iter().cloned().enumerate());
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn sparse_rows(&self) -> &[SparseRow<T>] {
        &self.rows
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row {
                m.set(i, *j, x.clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(j, _)| !v[*j].is_zero())
                    .fold(T::zero(), |acc, (j, x)| acc + x.clone() * v[*j].clone())
            })
            .collect()
    }

    /// Gauss-Jordan elimination. At each column the pivot is the candidate
    /// row of smallest height, ties going to the lowest row.
    pub fn rref(&self) -> Rref<T> {
        let mut active: Vec<SparseRow<T>> = self
            .rows
            .iter()
            .filter(|r| !r.is_empty())
            .cloned()
            .collect();
        let mut done: Vec<SparseRow<T>> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..self.cols {
            if active.is_empty() {
                break;
            }
            let best = active
                .iter()
                .enumerate()
                .filter(|(_, r)| r[0].0 == col)
                .min_by_key(|(i, r)| (r[0].1.height(), *i))
                .map(|(i, _)| i);
            let Some(bi) = best else { continue };
            let mut prow = active.remove(bi);
            let inv = T::one() / prow[0].1.clone();
            for e in prow.iter_mut() {
                e.1 = e.1.clone() * inv.clone();
            }
            let mut next = Vec::with_capacity(active.len());
            for r in active.drain(..) {
                if r[0].0 == col {
                    let f = r[0].1.clone();
                    let reduced = axpy(&r, &f, &prow);
                    if !reduced.is_empty() {
                        next.push(reduced);
                    }
                } else {
                    next.push(r);
                }
            }
            active = next;
            for r in done.iter_mut() {
                if let Ok(k) = r.binary_search_by_key(&col, |e| e.0) {
                    let f = r[k].1.clone();
                    *r = axpy(r, &f, &prow);
                }
            }
            done.push(prow);
            pivots.push(col);
        }
        Rref {
            cols: self.cols,
            rows: done,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = IncrementalEchelon::new(self.cols);
        for r in &self.rows {
            ech.insert_sparse(r.clone());
        }
        ech.rank()
    }

    pub fn nullspace_basis(&self) -> Vec<Vec<T>> {
        self.rref().nullspace_basis()
    }
}

impl<T: Scalar> Rref<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&j| !is_pivot[j]).collect()
    }

    pub fn nullspace_basis(&self) -> Vec<Vec<T>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if let Ok(k) = row.binary_search_by_key(&f, |e| e.0) {
                        v[p] = -row[k].1.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// `r - f·p` on sorted sparse rows.
fn axpy<T: Scalar>(r: &SparseRow<T>, f: &T, p: &SparseRow<T>) -> SparseRow<T> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map_or(usize::MAX, |e| e.0);
        let cj = p.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(r[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(f.clone() * p[j].1.clone())));
            j += 1;
        } else {
            let v = r[i].1.clone() - f.clone() * p[j].1.clone();
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn dense_to_sparse<T: Scalar>(v: &[T]) -> SparseRow<T> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

/// Row echelon basis that grows one vector at a time, keyed by leading
/// column. Used for rank augmentation against a fixed subspace.
#[derive(Debug, Clone)]
pub struct IncrementalEchelon<T> {
    dim: usize,
    rows: BTreeMap<usize, SparseRow<T>>,
}

impl<T: Scalar> IncrementalEchelon<T> {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after elimination against the current basis.
    pub fn reduce_sparse(&self, mut v: SparseRow<T>) -> SparseRow<T> {
        loop {
            let Some(lead) = v.first().map(|e| e.0) else {
                return v;
            };
            match self.rows.get(&lead) {
                Some(p) => {
                    let f = v[0].1.clone();
                    v = axpy(&v, &f, p);
                }
                None => return v,
            }
        }
    }

    /// Adds `v` if it is independent of the current span.
    pub fn insert_sparse(&mut self, v: SparseRow<T>) -> bool {
        let mut v = v;
        loop {
            let Some(lead) = v.first().map(|e| e.0) else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(p) => {
                    let f = v[0].1.clone();
                    v = axpy(&v, &f, p);
                }
                None => {
                    let inv = T::one() / v[0].1.clone();
                    for e in v.iter_mut() {
                        e.1 = e.1.clone() * inv.clone();
                    }
                    self.rows.insert(lead, v);
                    return true;
                }
            }
        }
    }

    pub fn insert(&mut self, v: &[T]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.insert_sparse(dense_to_sparse(v))
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce_sparse(dense_to_sparse(v)).is_empty()
    }
}
