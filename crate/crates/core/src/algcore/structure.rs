use crate::error::{Error, Result};
use crate::linalg::{axpy, Matrix};
use crate::report::{CheckReport, Defect};
use crate::scalar::{zero_threshold, Rational, Scalar};

/// Coefficients `c[i][j][k]` of `e_k` in `e_i · e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor<T> {
    dim: usize,
    c: Vec<T>,
}

/// A bilinear product with no symmetry assumed; same storage as a structure
/// tensor. Used for the products `S`, `T` and connections on phase spaces.
pub type ProductTensor<T> = StructureTensor<T>;

impl<T: Scalar> StructureTensor<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            c: vec![T::zero(); dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> T) -> Self {
        let mut t = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    t.c[(i * dim + j) * dim + k] = f(i, j, k);
                }
            }
        }
        t
    }

    /// Builds the product whose value on `(e_i, e_j)` is `f(i, j)`.
    pub fn from_products(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<T>) -> Self {
        let mut t = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim, "product vector has wrong length");
                t.c[(i * dim + j) * dim..(i * dim + j + 1) * dim].clone_from_slice(&v);
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: T) {
        let n = self.dim;
        self.c[(i * n + j) * n + k] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.c
    }

    /// `e_i · e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &[T] {
        let n = self.dim;
        &self.c[(i * n + j) * n..(i * n + j + 1) * n]
    }

    fn check_len(&self, v: &[T]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `a · b = Σ a_i b_j c_ij^k e_k`.
    pub fn multiply(&self, a: &[T], b: &[T]) -> Result<Vec<T>> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.mul(a, b))
    }

    /// Unchecked product; panics on length mismatch.
    pub fn mul(&self, a: &[T], b: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                axpy(&(ai.clone() * bj.clone()), self.basis_product(i, j), &mut out);
            }
        }
        out
    }

    /// Matrix of `b ↦ a · b`; column `j` is `a · e_j`.
    pub fn left_mult_matrix(&self, a: &[T]) -> Result<Matrix<T>> {
        self.check_len(a)?;
        Ok(self.left_mult(a))
    }

    pub fn left_mult(&self, a: &[T]) -> Matrix<T> {
        let n = self.dim;
        let mut m = Matrix::<T>::zeros(n, n);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = self.coeff(i, j, k);
                    if !c.is_zero() {
                        m[(k, j)] = m[(k, j)].clone() + ai.clone() * c.clone();
                    }
                }
            }
        }
        m
    }

    /// `L_{e_i}`.
    pub fn left_mult_basis(&self, i: usize) -> Matrix<T> {
        let n = self.dim;
        Matrix::from_fn(n, n, |k, j| self.coeff(i, j, k).clone())
    }

    /// Matrix of `b ↦ b · a`.
    pub fn right_mult(&self, a: &[T]) -> Matrix<T> {
        let n = self.dim;
        let mut m = Matrix::<T>::zeros(n, n);
        for (j, aj) in a.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            for i in 0..n {
                for k in 0..n {
                    let c = self.coeff(i, j, k);
                    if !c.is_zero() {
                        m[(k, i)] = m[(k, i)].clone() + aj.clone() * c.clone();
                    }
                }
            }
        }
        m
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> StructureTensor<U> {
        StructureTensor {
            dim: self.dim,
            c: self.c.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> StructureTensor<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Scale-aware zero threshold for float-mode checks on this tensor.
    pub fn default_tol(&self) -> f64 {
        zero_threshold(self.c.iter())
    }

    /// `e_i · e_j − e_j · e_i` defect over all basis pairs.
    pub fn commutativity_defect(&self) -> Defect<T> {
        let mut d = Defect::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (x, y) in self.basis_product(i, j).iter().zip(self.basis_product(j, i)) {
                    d.update(&(x.clone() - y.clone()), &[i, j]);
                }
            }
        }
        d
    }

    /// `assoc(e_i, e_j, e_k) = (e_i e_j) e_k − e_i (e_j e_k)`.
    pub fn associator(&self, i: usize, j: usize, k: usize) -> Vec<T> {
        let n = self.dim;
        let ij = self.basis_product(i, j);
        let jk = self.basis_product(j, k);
        let mut out = vec![T::zero(); n];
        for (m, c) in ij.iter().enumerate() {
            axpy(c, self.basis_product(m, k), &mut out);
        }
        for (m, c) in jk.iter().enumerate() {
            axpy(&-c.clone(), self.basis_product(i, m), &mut out);
        }
        out
    }

    pub fn associativity_defect(&self) -> Defect<T> {
        let n = self.dim;
        let mut d = Defect::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    d.update_all(&self.associator(i, j, k), &[i, j, k]);
                }
            }
        }
        d
    }

    /// `assoc(a,b,c) − assoc(b,a,c)` over basis triples.
    pub fn left_symmetry_defect(&self) -> Defect<T> {
        let n = self.dim;
        let mut d = Defect::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let a = self.associator(i, j, k);
                    let b = self.associator(j, i, k);
                    for (x, y) in a.iter().zip(&b) {
                        d.update(&(x.clone() - y.clone()), &[i, j, k]);
                    }
                }
            }
        }
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraFlags {
    pub commutative: bool,
    pub associative: bool,
    pub left_symmetric: bool,
}

/// A structure tensor together with its axiom flags, computed once at
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Algebra<T> {
    st: StructureTensor<T>,
    flags: AlgebraFlags,
    tol: f64,
    basis_names: Option<Vec<String>>,
}

impl<T: Scalar> Algebra<T> {
    pub fn new(st: StructureTensor<T>) -> Self {
        let tol = st.default_tol();
        Self::with_tol(st, tol)
    }

    /// Uses `tol` for float-mode flag decisions (ignored for rationals).
    pub fn with_tol(st: StructureTensor<T>, tol: f64) -> Self {
        let flags = AlgebraFlags {
            commutative: st.commutativity_defect().is_negligible(tol),
            associative: st.associativity_defect().is_negligible(tol),
            left_symmetric: st.left_symmetry_defect().is_negligible(tol),
        };
        Self {
            st,
            flags,
            tol,
            basis_names: None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.st.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.st.dim(),
                found: names.len(),
            });
        }
        self.basis_names = Some(names);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.st.dim()
    }

    pub fn structure(&self) -> &StructureTensor<T> {
        &self.st
    }

    pub fn flags(&self) -> AlgebraFlags {
        self.flags
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    pub fn is_commutative_associative(&self) -> bool {
        self.flags.commutative && self.flags.associative
    }

    pub fn multiply(&self, a: &[T], b: &[T]) -> Result<Vec<T>> {
        self.st.multiply(a, b)
    }

    pub fn left_mult_matrix(&self, a: &[T]) -> Result<Matrix<T>> {
        self.st.left_mult_matrix(a)
    }

    pub fn to_f64(&self) -> Algebra<f64> {
        let st = self.st.to_f64();
        let tol = st.default_tol();
        Algebra {
            st,
            flags: self.flags,
            tol,
            basis_names: self.basis_names.clone(),
        }
    }
}

impl Algebra<Rational> {
    pub fn from_f64_lossy(a: &Algebra<f64>) -> Self {
        Algebra::new(a.structure().map(|x| Rational::from_f64(*x)))
    }
}

pub fn check_commutative<T: Scalar>(a: &Algebra<T>) -> CheckReport {
    CheckReport::from_defect("commutative", &a.st.commutativity_defect(), a.tol)
}

pub fn check_associative<T: Scalar>(a: &Algebra<T>) -> CheckReport {
    CheckReport::from_defect("associative", &a.st.associativity_defect(), a.tol)
}

pub fn check_left_symmetric<T: Scalar>(a: &Algebra<T>) -> CheckReport {
    CheckReport::from_defect("left_symmetric", &a.st.left_symmetry_defect(), a.tol)
}
