use crate::error::{Error, Result};
use crate::linalg::axpy;
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::tensor::Tensor;

use super::structure::StructureTensor;

/// An antisymmetric bracket `[e_i, e_j] = Σ b[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketTensor<T>(StructureTensor<T>);

impl<T: Scalar> BracketTensor<T> {
    /// Validates antisymmetry within `tol` (exactly for rationals).
    pub fn new(t: StructureTensor<T>, tol: f64) -> Result<Self> {
        let n = t.dim();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let s = t.coeff(i, j, k).clone() + t.coeff(j, i, k).clone();
                    if !s.is_negligible(tol) {
                        return Err(Error::NotAntisymmetric { i: i + 1, j: j + 1 });
                    }
                }
            }
        }
        Ok(Self(t))
    }

    /// Builds a bracket from values on pairs `i < j`; the rest follows by
    /// antisymmetry.
    pub fn from_upper(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<T>) -> Self {
        let mut t = StructureTensor::zeros(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = f(i, j);
                for (k, x) in v.into_iter().enumerate() {
                    t.set(j, i, k, -x.clone());
                    t.set(i, j, k, x);
                }
            }
        }
        Self(t)
    }

    pub fn zero(dim: usize) -> Self {
        Self(StructureTensor::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn tensor(&self) -> &StructureTensor<T> {
        &self.0
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[T] {
        self.0.basis_product(i, j)
    }

    pub fn bracket(&self, u: &[T], v: &[T]) -> Vec<T> {
        self.0.mul(u, v)
    }

    pub fn is_abelian(&self) -> bool {
        self.0.is_zero()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> BracketTensor<U> {
        BracketTensor(self.0.map(f))
    }
}

/// `[a, b] = a·b − b·a`.
pub fn commutator_bracket<T: Scalar>(st: &StructureTensor<T>) -> BracketTensor<T> {
    let n = st.dim();
    BracketTensor::from_upper(n, |i, j| {
        st.basis_product(i, j)
            .iter()
            .zip(st.basis_product(j, i))
            .map(|(x, y)| x.clone() - y.clone())
            .collect()
    })
}

/// `J(a,b,c) = [[a,b],c] + [[b,c],a] + [[c,a],b]` on all basis triples,
/// as a tensor of shape `(n, n, n, n)`.
pub fn jacobiator<T: Scalar>(b: &BracketTensor<T>) -> Tensor<T> {
    let n = b.dim();
    let bt = b.tensor();
    let outer = |x: &[T], k: usize, out: &mut Vec<T>| {
        for (m, c) in x.iter().enumerate() {
            axpy(c, bt.basis_product(m, k), out);
        }
    };
    Tensor::from_vector_fn(&[n, n, n, n], |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut out = vec![T::zero(); n];
        outer(bt.basis_product(i, j), k, &mut out);
        outer(bt.basis_product(j, k), i, &mut out);
        outer(bt.basis_product(k, i), j, &mut out);
        out
    })
}

pub fn jacobi_check<T: Scalar>(b: &BracketTensor<T>, tol: f64) -> CheckReport {
    let j = jacobiator(b);
    let mut d = j.defect();
    // Report the triple, not the output coordinate.
    if let Some(w) = d.witness().map(|w| w[..3].to_vec()) {
        let v = d.value().clone();
        d = crate::report::Defect::new();
        d.update(&v, &w);
    }
    CheckReport::from_defect("jacobi", &d, tol)
}
