//! Elements of `A ⊗ A` stored as matrices, with `r(α, β) = αᵀ r β`.
//!
//! JSON form: `{"dim": 2, "entries": [[0, "1/2"], ["-1/2", 0]]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algcore::coefficient;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix<T> {
    r: Matrix<T>,
}

impl<T: Scalar> RMatrix<T> {
    pub fn new(r: Matrix<T>) -> Result<Self> {
        if !r.is_square() {
            return Err(Error::DimensionMismatch {
                expected: r.rows(),
                found: r.cols(),
            });
        }
        Ok(Self { r })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            r: Matrix::zeros(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.r.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.r
    }

    /// Symmetric part `(r + rᵀ)/2`.
    pub fn sym(&self) -> Matrix<T> {
        self.r.add(&self.r.transpose()).scale(&T::half())
    }

    /// Skew part `(r − rᵀ)/2`.
    pub fn skew(&self) -> Matrix<T> {
        self.r.sub(&self.r.transpose()).scale(&T::half())
    }

    /// Matrix of `r_# : A* → A`, defined by `⟨β, r_#α⟩ = r(α, β)`.
    pub fn sharp(&self) -> Matrix<T> {
        self.r.transpose()
    }

    pub fn sharp_apply(&self, alpha: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|j| {
                alpha
                    .iter()
                    .enumerate()
                    .fold(T::zero(), |acc, (i, a)| acc + a.clone() * self.r[(i, j)].clone())
            })
            .collect()
    }

    pub fn eval(&self, alpha: &[T], beta: &[T]) -> T {
        self.r.bilinear(alpha, beta)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> RMatrix<U> {
        RMatrix { r: self.r.map(f) }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<Value>>,
}

pub fn rmatrix_from_json(bytes: &[u8]) -> Result<RMatrix<Rational>> {
    let spec: RMatrixJson = serde_json::from_slice(bytes)?;
    let n = spec.dim;
    if spec.entries.len() != n || spec.entries.iter().any(|row| row.len() != n) {
        return Err(Error::Input(format!("entries must be a {n}x{n} array")));
    }
    let rows = spec
        .entries
        .iter()
        .map(|row| row.iter().map(coefficient).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RMatrix::new(Matrix::from_rows(rows)?)
}

pub fn rmatrix_to_json(r: &RMatrix<Rational>) -> RMatrixJson {
    let n = r.dim();
    RMatrixJson {
        dim: n,
        entries: r
            .matrix()
            .to_rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| Value::String(crate::scalar::format_rational(c)))
                    .collect()
            })
            .collect(),
    }
}
