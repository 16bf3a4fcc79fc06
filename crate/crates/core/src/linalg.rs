//! Small dense matrices over a [`Scalar`] field.
//!
//! Sizes here never exceed a few dozen rows, so everything is plain
//! row-major storage with Gaussian elimination. Pivoting picks the largest
//! absolute entry, which is also a fine choice for rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{zero_threshold, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &rows)
            .finish()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Scalar> Matrix<T> {
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
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Builds from column vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Result<Self> {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, Vec::len);
        if let Some(bad) = cols.iter().find(|c| c.len() != nrows) {
            return Err(Error::DimensionMismatch {
                expected: nrows,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(nrows, ncols, |r, c| cols[c][r].clone()))
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] = out[(r, c)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(T::zero(), |acc, c| {
                    if v[c].is_zero() {
                        acc
                    } else {
                        acc + self[(r, c)].clone() * v[c].clone()
                    }
                })
            })
            .collect()
    }

    /// `uᵀ M v`.
    pub fn bilinear(&self, u: &[T], v: &[T]) -> T {
        dot(u, &self.mul_vec(v))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Principal submatrix on `idx`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|x| x.abs())
            .fold(T::zero(), |m, x| if x > m { x } else { m })
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    /// Scale-aware threshold `1e-10 (1 + max |entry|)` used for rank and
    /// signature decisions in float mode.
    pub fn zero_threshold(&self) -> f64 {
        zero_threshold(self.data.iter())
    }

    /// First `(i, j)` with `m_ij != m_ji` beyond `tol`, if any.
    pub fn asymmetry(&self, tol: f64) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                let d = self[(i, j)].clone() - self[(j, i)].clone();
                if !d.is_negligible(tol) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, tol: f64) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = m.pivot_in_column(col, row, tol) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = T::one() / m[(row, col)].clone();
            for c in 0..m.cols {
                m[(row, c)] = m[(row, c)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in 0..m.cols {
                        let v = m[(row, c)].clone();
                        if !v.is_zero() {
                            m[(r, c)] = m[(r, c)].clone() - f.clone() * v;
                        }
                    }
                    m[(r, col)] = T::zero();
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn pivot_in_column(&self, col: usize, from: usize, tol: f64) -> Option<usize> {
        let mut best: Option<(usize, T)> = None;
        for r in from..self.rows {
            let a = self[(r, col)].abs();
            if a.is_negligible(tol) {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| a > *b) {
                best = Some((r, a));
            }
        }
        best.map(|(r, _)| r)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.rref(tol).1.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![T::zero(); self.cols];
                x[f] = T::one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -r[(row, f)].clone();
                }
                x
            })
            .collect()
    }

    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = m.pivot_in_column(col, col, 0.0) else {
                return T::zero();
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det = det * piv.clone();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone() / piv.clone();
                for c in col..n {
                    let v = m[(col, c)].clone();
                    m[(r, c)] = m[(r, c)].clone() - f.clone() * v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan; `tol` decides singular pivots in float mode.
    pub fn inverse(&self, tol: f64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                T::one()
            } else {
                T::zero()
            }
        });
        let (red, pivots) = aug.rref(tol);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |r, c| red[(r, c + n)].clone()))
    }

    /// Solves `M x = b`.
    pub fn solve(&self, b: &[T], tol: f64) -> Result<Vec<T>> {
        Ok(self.inverse(tol)?.mul_vec(b))
    }

    /// Inertia `(p, q, z)` of a symmetric matrix by pivoted symmetric
    /// congruence (LDLᵀ with 2x2 pairing when the diagonal vanishes).
    pub fn inertia(&self, tol: f64) -> Result<(usize, usize, usize)> {
        if let Some((i, j)) = self.asymmetry(tol) {
            return Err(Error::NotSymmetric { i, j });
        }
        let mut m = self.clone();
        let mut active: Vec<usize> = (0..self.rows).collect();
        let (mut p, mut q) = (0, 0);
        while !active.is_empty() {
            let best_diag = active
                .iter()
                .copied()
                .max_by(|&a, &b| m[(a, a)].abs().partial_cmp(&m[(b, b)].abs()).unwrap());
            let piv = match best_diag {
                Some(i) if !m[(i, i)].is_negligible(tol) => i,
                _ => {
                    // Diagonal exhausted: pair with the largest off-diagonal
                    // entry via e_i -> e_i + s e_j, s chosen to avoid cancellation.
                    let mut best: Option<(usize, usize, T)> = None;
                    for (ai, &i) in active.iter().enumerate() {
                        for &j in &active[ai + 1..] {
                            let a = m[(i, j)].abs();
                            if !a.is_negligible(tol)
                                && best.as_ref().is_none_or(|(_, _, b)| a > *b)
                            {
                                best = Some((i, j, a));
                            }
                        }
                    }
                    let Some((i, j, _)) = best else { break };
                    let s = if m[(i, j)] < T::zero() { -T::one() } else { T::one() };
                    for k in 0..m.rows {
                        let v = m[(k, i)].clone() + s.clone() * m[(k, j)].clone();
                        m[(k, i)] = v;
                    }
                    for k in 0..m.cols {
                        let v = m[(i, k)].clone() + s.clone() * m[(j, k)].clone();
                        m[(i, k)] = v;
                    }
                    i
                }
            };
            let d = m[(piv, piv)].clone();
            if d > T::zero() {
                p += 1;
            } else {
                q += 1;
            }
            active.retain(|&k| k != piv);
            for &r in &active {
                let f = m[(r, piv)].clone() / d.clone();
                if f.is_zero() {
                    continue;
                }
                for &c in &active {
                    let v = m[(piv, c)].clone();
                    m[(r, c)] = m[(r, c)].clone() - f.clone() * v;
                }
            }
        }
        Ok((p, q, self.rows - p - q))
    }
}

pub fn dot<T: Scalar>(u: &[T], v: &[T]) -> T {
    u.iter()
        .zip(v)
        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

pub fn axpy<T: Scalar>(a: &T, x: &[T], y: &mut [T]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi = yi.clone() + a.clone() * xi.clone();
    }
}

pub fn vec_add<T: Scalar>(u: &[T], v: &[T]) -> Vec<T> {
    u.iter().zip(v).map(|(a, b)| a.clone() + b.clone()).collect()
}

pub fn vec_sub<T: Scalar>(u: &[T], v: &[T]) -> Vec<T> {
    u.iter().zip(v).map(|(a, b)| a.clone() - b.clone()).collect()
}

pub fn vec_scale<T: Scalar>(s: &T, v: &[T]) -> Vec<T> {
    v.iter().map(|x| s.clone() * x.clone()).collect()
}

pub fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

pub fn max_abs_vec<T: Scalar>(v: &[T]) -> T {
    v.iter()
        .map(|x| x.abs())
        .fold(T::zero(), |m, x| if x > m { x } else { m })
}
