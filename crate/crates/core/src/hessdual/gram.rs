//! The bivector `h` on `A*`, fundamental vector fields, the orbit action and
//! the metrics induced on orbits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algcore::{signature, Algebra, BilinearForm, Signature};
use crate::error::{Error, Result};
use crate::expm::exp_matrix;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Default sampling seed.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// `H(μ)` with its pivot tangent generators and the restricted Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GramData<T> {
    pub h: Matrix<T>,
    pub rank: usize,
    /// 0-based indices `I` with `{X_{e_i}(μ) : i ∈ I}` a basis of the
    /// orbit tangent space.
    pub tangent_indices: Vec<usize>,
    /// `G_I = (H_ij)_{i,j ∈ I}`.
    pub gram: Matrix<T>,
    pub signature: Signature,
}

fn require_ca<T: Scalar>(a: &Algebra<T>) -> Result<()> {
    if a.is_commutative_associative() {
        Ok(())
    } else {
        Err(Error::NotCommutativeAssociative)
    }
}

fn check_len<T>(a: &Algebra<impl Scalar>, v: &[T]) -> Result<()> {
    if v.len() == a.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: v.len(),
        })
    }
}

/// `H_ij(μ) = Σ_k c_ij^k μ_k` with the tangent pivots of `H` (lowest index
/// first) and the signature of `G_I`.
pub fn h_matrix<T: Scalar>(a: &Algebra<T>, mu: &[T]) -> Result<GramData<T>> {
    require_ca(a)?;
    check_len(a, mu)?;
    let n = a.dim();
    let st = a.structure();
    let h = Matrix::from_fn(n, n, |i, j| {
        st.basis_product(i, j)
            .iter()
            .zip(mu)
            .fold(T::zero(), |acc, (c, m)| acc + c.clone() * m.clone())
    });
    let (_, pivots) = h.rref(h.zero_threshold());
    let gram = h.submatrix(&pivots, &pivots);
    let signature = signature(&BilinearForm::symmetric(gram.clone(), gram.zero_threshold())?)?;
    Ok(GramData {
        rank: pivots.len(),
        tangent_indices: pivots,
        h,
        gram,
        signature,
    })
}

/// `X_u(μ) = L_u^*μ`, the covector `v ↦ ⟨μ, u·v⟩`.
pub fn fundamental_vector<T: Scalar>(a: &Algebra<T>, u: &[T], mu: &[T]) -> Result<Vec<T>> {
    check_len(a, u)?;
    check_len(a, mu)?;
    Ok(a.structure().left_mult(u).transpose().mul_vec(mu))
}

/// `Φ(u, μ) = exp(L_u^*)μ`.
pub fn orbit_map<T: Scalar>(a: &Algebra<T>, u: &[T], mu: &[T]) -> Result<Vec<T>> {
    check_len(a, u)?;
    check_len(a, mu)?;
    let lt = a.structure().left_mult(u).transpose();
    Ok(exp_matrix(&lt).mul_vec(mu))
}

pub fn orbit_rank<T: Scalar>(a: &Algebra<T>, mu: &[T]) -> Result<usize> {
    Ok(h_matrix(a, mu)?.rank)
}

/// `count` points `Φ(u_j, μ)` with `u_j` uniform in `[-1, 1]^n`.
pub fn orbit_sample<T: Scalar>(a: &Algebra<T>, mu: &[f64], count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let af = a.to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let u: Vec<f64> = (0..a.dim()).map(|_| rng.random_range(-1.0..=1.0)).collect();
            orbit_map(&af, &u, mu)
        })
        .collect()
}

/// `H(μ)^{-1}`, the metric on an open orbit in the linear coordinates of
/// `A*`.
pub fn ambient_metric<T: Scalar>(a: &Algebra<T>, mu: &[T]) -> Result<BilinearForm<T>> {
    let g = h_matrix(a, mu)?;
    if g.rank < a.dim() {
        return Err(Error::Singular);
    }
    let inv = g.h.inverse(g.h.zero_threshold())?;
    BilinearForm::symmetric(inv.clone(), inv.zero_threshold())
}

/// The orbit metric on the pivot generators `X_{e_i}`, `i ∈ I`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitMetric {
    /// 1-based generator indices.
    pub generators: Vec<usize>,
    pub gram: Vec<Vec<f64>>,
    pub signature: Signature,
}

pub fn orbit_metric<T: Scalar>(a: &Algebra<T>, mu: &[T]) -> Result<OrbitMetric> {
    let g = h_matrix(a, mu)?;
    Ok(OrbitMetric {
        generators: g.tangent_indices.iter().map(|i| i + 1).collect(),
        gram: g.gram.to_f64().to_rows(),
        signature: g.signature,
    })
}
