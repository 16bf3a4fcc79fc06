use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A bilinear form given by its Gram matrix in the standard basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm<T> {
    m: Matrix<T>,
    symmetric: bool,
}

impl<T: Scalar> BilinearForm<T> {
    /// Wraps a square matrix, recording whether it is symmetric within `tol`.
    pub fn new(m: Matrix<T>, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        let symmetric = m.asymmetry(tol).is_none();
        Ok(Self { m, symmetric })
    }

    /// Wraps a matrix that must be symmetric.
    pub fn symmetric(m: Matrix<T>, tol: f64) -> Result<Self> {
        let f = Self::new(m, tol)?;
        if let Some((i, j)) = f.m.asymmetry(tol) {
            return Err(Error::NotSymmetric { i: i + 1, j: j + 1 });
        }
        Ok(f)
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn eval(&self, u: &[T], v: &[T]) -> T {
        self.m.bilinear(u, v)
    }
}

/// Counts of positive, negative and null directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub z: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize, z: usize) -> Self {
        Self { p, q, z }
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.z)
    }
}

/// Signature by pivoted symmetric congruence. Float mode uses the threshold
/// `1e-10 (1 + max |entry|)`; rationals are decided exactly.
pub fn signature<T: Scalar>(f: &BilinearForm<T>) -> Result<Signature> {
    let tol = f.m.zero_threshold();
    if !f.symmetric {
        let (i, j) = f.m.asymmetry(tol).unwrap_or((0, 0));
        return Err(Error::NotSymmetric { i: i + 1, j: j + 1 });
    }
    let (p, q, z) = f.m.inertia(tol)?;
    Ok(Signature { p, q, z })
}
