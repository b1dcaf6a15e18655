use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::Zero;

use super::ring::{format_scalar, int, Ring, Scalar};
use crate::error::{Error, Result};

/// Dense matrix over an exact ring, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    pub fn diagonal(ring: Ring, entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(ring, entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = ring.normalize(e.clone());
        }
        m
    }

    /// Builds a matrix from integer rows, reducing into the ring.
    pub fn from_i64(ring: Ring, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_i64_sized(ring, rows.len(), cols, rows)
    }

    pub fn from_i64_sized(ring: Ring, nrows: usize, ncols: usize, rows: &[Vec<i64>]) -> Self {
        assert_eq!(rows.len(), nrows);
        let mut m = Self::zeros(ring, nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = ring.from_i64(*v);
            }
        }
        m
    }

    /// Builds a matrix from scalars, checking ring membership.
    pub fn from_scalars(ring: Ring, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data
            .into_iter()
            .map(|x| ring.coerce(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring,
            rows,
            cols,
            data,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Nonzero entries of column `j` as `(row, value)` pairs.
    pub fn column_sparse(&self, j: usize) -> Vec<(usize, Scalar)> {
        (0..self.rows)
            .filter(|&i| !self[(i, j)].is_zero())
            .map(|i| (i, self[(i, j)].clone()))
            .collect()
    }

    pub fn from_columns(ring: Ring, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_rows_vec(ring: Ring, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(ring, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, v) in r.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        self.map(|r, x| r.neg(x))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let c = self.ring.normalize(c.clone());
        self.map(|r, x| r.mul(x, &c))
    }

    fn map(&self, f: impl Fn(&Ring, &Scalar) -> Scalar) -> Self {
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| f(&self.ring, x)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Self {
        self.zip(other, |r, a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        self.zip(other, |r, a, b| r.sub(a, b))
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Ring, &Scalar, &Scalar) -> Scalar) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(&self.ring, a, b))
                .collect(),
        }
    }

    /// Product checked for ring and shape compatibility.
    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let cell = &mut out.data[i * other.cols + j];
                        *cell += a * b;
                    }
                }
            }
        }
        if let Ring::PrimeField(_) = self.ring {
            for x in &mut out.data {
                *x = self.ring.normalize(std::mem::take(x));
            }
        }
        Ok(out)
    }

    /// Sub-matrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Self::zeros(self.ring, self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut m = Self::zeros(self.ring, self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        m
    }

    pub fn block_diag(&self, other: &Matrix) -> Self {
        let mut m = Self::zeros(self.ring, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &Matrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Applies the matrix to a sparse vector given as `(index, value)` pairs.
    pub fn apply_sparse(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rows];
        for (j, x) in v {
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self[(i, *j)];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out.into_iter().map(|x| self.ring.normalize(x)).collect()
    }

    /// Reinterprets the entries in another ring (reducing mod p when needed).
    pub fn change_ring(&self, ring: Ring) -> Result<Matrix> {
        Matrix::from_scalars(ring, self.rows, self.cols, self.data.clone())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += c * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if !s.is_zero() {
                let v = self.ring.add(&self.data[target * self.cols + j], &(c * s));
                self.data[target * self.cols + j] = v;
            }
        }
    }

    /// col[target] += c * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if !s.is_zero() {
                let v = self.ring.add(&self.data[i * self.cols + target], &(c * s));
                self.data[i * self.cols + target] = v;
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.ring.mul(&self.data[i * self.cols + j], c);
            self.data[i * self.cols + j] = v;
        }
    }

    /// Determinant, computed by fraction-free elimination over the fraction
    /// field (the result lies in the ring).
    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let field = self.ring.fraction_field();
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = int(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = field.neg(&det);
            }
            let pivot = a[c * n + c].clone();
            det = field.mul(&det, &pivot);
            let pinv = field.inv(&pivot);
            for r in c + 1..n {
                if a[r * n + c].is_zero() {
                    continue;
                }
                let f = field.mul(&a[r * n + c], &pinv);
                for j in c..n {
                    let v = field.sub(&a[r * n + j], &field.mul(&f, &a[c * n + j]));
                    a[r * n + j] = v;
                }
            }
        }
        self.ring.normalize(det)
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        let field = self.ring.fraction_field();
        let (m, n) = self.shape();
        let mut a = self.data.clone();
        let mut rank = 0;
        for c in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r * n + c].is_zero()) else {
                continue;
            };
            for j in 0..n {
                a.swap(p * n + j, rank * n + j);
            }
            let pinv = field.inv(&a[rank * n + c]);
            for r in rank + 1..m {
                if a[r * n + c].is_zero() {
                    continue;
                }
                let f = field.mul(&a[r * n + c], &pinv);
                for j in c..n {
                    let v = field.sub(&a[r * n + j], &field.mul(&f, &a[rank * n + j]));
                    a[r * n + j] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse over the ring, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let field = self.ring.fraction_field();
        let mut a = self.change_ring(field).ok()?;
        let mut inv = Matrix::identity(field, n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let pinv = field.inv(&a[(c, c)]);
            a.scale_row(c, &pinv);
            inv.scale_row(c, &pinv);
            for r in 0..n {
                if r != c && !a[(r, c)].is_zero() {
                    let f = field.neg(&a[(r, c)]);
                    a.add_row_multiple(r, c, &f);
                    inv.add_row_multiple(r, c, &f);
                }
            }
        }
        inv.change_ring(self.ring).ok()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("incompatible matrix product")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{} [", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "[{}]", row.join(", "))?;
            if i + 1 < self.rows {
                write!(f, ", ")?;
            }
        }
        write!(f, "]")
    }
}
