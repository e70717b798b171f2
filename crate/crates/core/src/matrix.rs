//! Row-major dense and CSR sparse matrices.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    /// Wraps row-major `data`, rejecting a wrong length or non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite entry at ({}, {})",
                i / cols.max(1),
                i % cols.max(1)
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

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Sub-matrix made of the listed rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Self {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// `self * rhs`. Zero entries of `self` are skipped, which pays off on
    /// sparse bag-of-words feature matrices.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == T::zero() {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ * rhs` without materializing the transpose.
    pub fn t_matmul(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "({}x{})ᵀ * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.cols, rhs.cols);
        for k in 0..self.rows {
            let r = rhs.row(k);
            for (i, &a) in self.row(k).iter().enumerate() {
                if a == T::zero() {
                    continue;
                }
                let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(r) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self * rhsᵀ`.
    pub fn matmul_t(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * ({}x{})ᵀ",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.rows, |i, j| {
            self.row(i).iter().zip(rhs.row(j)).map(|(&a, &b)| a * b).sum()
        }))
    }

    pub fn frobenius_sq(&self) -> T {
        self.data.iter().map(|&v| v * v).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }

    /// Index of the largest entry in row `i`; ties go to the smaller column.
    pub fn row_argmax(&self, i: usize) -> usize {
        let mut best = 0;
        for (j, &v) in self.row(i).iter().enumerate().skip(1) {
            if v > self.row(i)[best] {
                best = j;
            }
        }
        best
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Square or rectangular CSR matrix with sorted, unique column ids per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    offsets: Vec<usize>,
    col_ids: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> SparseMatrix<T> {
    /// Builds from per-row `(col, value)` lists; entries are sorted and
    /// duplicate columns within a row are summed.
    pub fn from_row_entries(cols: usize, rows: Vec<Vec<(usize, T)>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut offsets = Vec::with_capacity(n_rows + 1);
        offsets.push(0);
        let mut col_ids = Vec::new();
        let mut values = Vec::new();
        for (i, mut row) in rows.into_iter().enumerate() {
            row.sort_by_key(|&(c, _)| c);
            for (c, v) in row {
                if c >= cols {
                    return Err(Error::DimensionMismatch(format!(
                        "column {c} in row {i} of a matrix with {cols} columns"
                    )));
                }
                if !v.is_finite() {
                    return Err(Error::InvalidArgument(format!("non-finite entry at ({i}, {c})")));
                }
                if col_ids.len() > *offsets.last().unwrap() && *col_ids.last().unwrap() == c {
                    *values.last_mut().unwrap() += v;
                } else {
                    col_ids.push(c);
                    values.push(v);
                }
            }
            offsets.push(col_ids.len());
        }
        Ok(Self {
            rows: n_rows,
            cols,
            offsets,
            col_ids,
            values,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn row(&self, i: usize) -> (&[usize], &[T]) {
        let r = self.offsets[i]..self.offsets[i + 1];
        (&self.col_ids[r.clone()], &self.values[r])
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        let (c, v) = self.row(i);
        c.binary_search(&j).map_or(T::zero(), |k| v[k])
    }

    pub fn row_sum(&self, i: usize) -> T {
        self.row(i).1.iter().copied().sum()
    }

    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let (c, v) = self.row(i);
                c.iter().zip(v).map(|(&j, &a)| a * x[j]).sum()
            })
            .collect())
    }

    /// Sparse times dense.
    pub fn spmm(&self, rhs: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
        if self.cols != rhs.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} sparse * {}x{} dense",
                self.rows,
                self.cols,
                rhs.rows(),
                rhs.cols()
            )));
        }
        let k = rhs.cols();
        let mut out = DenseMatrix::zeros(self.rows, k);
        for i in 0..self.rows {
            let (c, v) = self.row(i);
            let out_row = out.row_mut(i);
            for (&j, &a) in c.iter().zip(v) {
                for (o, &b) in out_row.iter_mut().zip(rhs.row(j)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ * rhs` without materializing the transpose.
    pub fn t_spmm(&self, rhs: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
        if self.rows != rhs.rows() {
            return Err(Error::DimensionMismatch(format!(
                "({}x{} sparse)ᵀ * {}x{} dense",
                self.rows,
                self.cols,
                rhs.rows(),
                rhs.cols()
            )));
        }
        let mut out = DenseMatrix::zeros(self.cols, rhs.cols());
        for i in 0..self.rows {
            let (c, v) = self.row(i);
            let src = rhs.row(i);
            for (&j, &a) in c.iter().zip(v) {
                for (o, &b) in out.row_mut(j).iter_mut().zip(src) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let (c, v) = self.row(i);
            for (&j, &a) in c.iter().zip(v) {
                d[(i, j)] = a;
            }
        }
        d
    }

    pub fn is_symmetric(&self, tol: T) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                let (c, v) = self.row(i);
                c.iter().zip(v).all(|(&j, &a)| (a - self.get(j, i)).abs() <= tol)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_bad_input() {
        assert!(DenseMatrix::<f64>::new(2, 2, vec![1.0; 3]).is_err());
        assert!(DenseMatrix::new(1, 2, vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn products_agree() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, -1.0], vec![3.0, 0.5]]).unwrap();
        let b = DenseMatrix::from_rows(&[vec![2.0, 0.0, 1.0], vec![1.0, 1.0, -2.0]]).unwrap();
        let ab = a.matmul(&b).unwrap();
        assert_eq!(ab.row(0), &[4.0, 2.0, -3.0]);
        assert_eq!(ab.row(2), &[6.5, 0.5, 2.0]);
        let at_b = a.transpose().t_matmul(&b).unwrap();
        assert_eq!(at_b, ab);
        let ab_t = a.matmul_t(&b.transpose()).unwrap();
        assert_eq!(ab_t, ab);
        assert!(a.matmul(&a).is_err());
    }

    #[test]
    fn sparse_dense_roundtrip() {
        let s = SparseMatrix::from_row_entries(
            3,
            vec![vec![(2, 1.0), (0, 2.0)], vec![], vec![(1, 3.0), (1, 1.0)]],
        )
        .unwrap();
        assert_eq!(s.nnz(), 3);
        assert_eq!(s.get(2, 1), 4.0);
        let x = DenseMatrix::from_rows(&[vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        assert_eq!(s.spmm(&x).unwrap(), s.to_dense().matmul(&x).unwrap());
        assert_eq!(s.t_spmm(&x).unwrap(), s.to_dense().t_matmul(&x).unwrap());
        assert_eq!(s.matvec(&[1.0, 2.0, 3.0]).unwrap(), vec![5.0, 0.0, 8.0]);
    }

    #[test]
    fn argmax_ties_go_low() {
        let m = DenseMatrix::from_rows(&[vec![0.5, 0.5], vec![0.1, 0.9]]).unwrap();
        assert_eq!(m.row_argmax(0), 0);
        assert_eq!(m.row_argmax(1), 1);
    }
}
