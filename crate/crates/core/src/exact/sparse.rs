use std::collections::BTreeMap;

use super::Field;
use crate::error::{ensure_dim, Result};

/// Row-compressed exact sparse matrix.
///
/// Each row holds `(col, value)` pairs sorted by column, with no duplicate
/// keys and no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, T)>>,
}

fn accumulate<T: Field>(acc: &mut BTreeMap<usize, T>, col: usize, value: T) {
    if value.is_zero() {
        return;
    }
    match acc.entry(col) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().clone() + value;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

impl<T: Field> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    pub fn scalar(n: usize, value: T) -> Self {
        if value.is_zero() {
            return Self::zeros(n, n);
        }
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, value.clone())]).collect(),
        }
    }

    /// Builds a matrix from triplets; duplicate keys are summed and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
            accumulate(&mut acc[r], c, v);
        }
        Self::from_row_maps(cols, acc)
    }

    pub(crate) fn from_row_maps(cols: usize, rows: Vec<BTreeMap<usize, T>>) -> Self {
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().map(|m| m.into_iter().collect()).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), cols, "ragged dense matrix");
                row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))
            }),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_triplets(
            rows,
            columns.len(),
            columns.iter().enumerate().flat_map(|(c, col)| {
                assert_eq!(col.len(), rows);
                col.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(r, v)| (r, c, v.clone()))
            }),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        match self.data[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.triplets().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && self.scale(&-T::one()) == self.transpose()
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.triplets().map(|(r, c, v)| (r, c, f(v))),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|v| v.clone() * k.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.rows, other.rows)?;
        ensure_dim(self.cols, other.cols)?;
        Ok(Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets()
                .chain(other.triplets())
                .map(|(r, c, v)| (r, c, v.clone())),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        ensure_dim(self.cols, v.len())?;
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter().fold(T::zero(), |acc, (c, a)| {
                    if v[*c].is_zero() {
                        acc
                    } else {
                        acc + a.clone() * v[*c].clone()
                    }
                })
            })
            .collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.cols, other.rows)?;
        let rows = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        accumulate(&mut acc, *c, a.clone() * b.clone());
                    }
                }
                acc
            })
            .collect();
        Ok(Self::from_row_maps(other.cols, rows))
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[Self]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            ensure_dim(cols, b.cols)?;
            data.extend(b.data.iter().cloned());
        }
        Ok(Self {
            rows: data.len(),
            cols,
            data,
        })
    }
}
