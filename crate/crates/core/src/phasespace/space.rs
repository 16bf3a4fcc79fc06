//! The phase space `Φ(A) = A ⊕ A*` over a point and its brackets.
//!
//! Block layout: coordinates `0..n` span `A`, coordinates `n..2n` span `A*`.
//! Linear maps act on column vectors.

use crate::algcore::{BilinearForm, BracketTensor, StructureTensor};
use crate::error::{Error, Result};
use crate::linalg::{axpy, unit, vec_sub, Matrix};
use crate::report::{CheckReport, Defect};
use crate::scalar::Scalar;
use crate::tensor::Tensor;

use super::compat::lie_extendible_check;
use super::products::{
    check_quasi_s_matrix, delta_r, dual_action, dual_of_product, s_bracket, t_from_r,
    ProductTensor,
};
use super::rmatrix::RMatrix;

/// A `2n`-dimensional Lie algebra with a metric, an endomorphism `K` and the
/// 2-form `Ω_K(a, b) = ⟨Ka, b⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpace<T> {
    n: usize,
    bracket: BracketTensor<T>,
    metric: BilinearForm<T>,
    k: Matrix<T>,
    omega: BilinearForm<T>,
}

impl<T: Scalar> PhaseSpace<T> {
    pub fn new(bracket: BracketTensor<T>, metric: Matrix<T>, k: Matrix<T>) -> Result<Self> {
        let m = bracket.dim();
        for found in [metric.rows(), metric.cols(), k.rows(), k.cols()] {
            if found != m {
                return Err(Error::DimensionMismatch { expected: m, found });
            }
        }
        if m % 2 != 0 {
            return Err(Error::Input(format!("phase space dimension {m} is odd")));
        }
        let omega = k.transpose().matmul(&metric);
        Ok(Self {
            n: m / 2,
            bracket,
            metric: BilinearForm::new(metric, 0.0)?,
            k,
            omega: BilinearForm::new(omega, 0.0)?,
        })
    }

    /// Half the dimension, i.e. `dim A`.
    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn bracket(&self) -> &BracketTensor<T> {
        &self.bracket
    }

    pub fn metric(&self) -> &BilinearForm<T> {
        &self.metric
    }

    pub fn k(&self) -> &Matrix<T> {
        &self.k
    }

    pub fn omega(&self) -> &BilinearForm<T> {
        &self.omega
    }

    /// Same bracket and metric with another `K`.
    pub fn with_k(&self, k: Matrix<T>) -> Result<Self> {
        Self::new(self.bracket.clone(), self.metric.matrix().clone(), k)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> PhaseSpace<U> {
        PhaseSpace::new(
            self.bracket.map(f),
            self.metric.matrix().map(f),
            self.k.map(f),
        )
        .expect("shapes are preserved")
    }
}

fn split<T: Scalar>(u: &[T], n: usize) -> (&[T], &[T]) {
    u.split_at(n)
}

fn join<T: Scalar>(x: Vec<T>, a: Vec<T>) -> Vec<T> {
    let mut v = x;
    v.extend(a);
    v
}

/// `⟨,⟩₀ = [[0, I], [I, 0]]`.
pub fn hyperbolic_metric<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if i + n == j || j + n == i {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// `K₀ = diag(I, −I)`.
pub fn k0<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(2 * n, 2 * n, |i, j| match (i == j, i < n) {
        (true, true) => T::one(),
        (true, false) => -T::one(),
        _ => T::zero(),
    })
}

/// `⟨X+α, Y+β⟩_r = ⟨α,Y⟩ + ⟨β,X⟩ − 2𝔰(α,β)`.
pub fn metric_r<T: Scalar>(r: &RMatrix<T>) -> Matrix<T> {
    let n = r.dim();
    let s = r.sym();
    let two = T::from_i64(2);
    let mut g = hyperbolic_metric::<T>(n);
    for i in 0..n {
        for j in 0..n {
            g[(n + i, n + j)] = -(two.clone() * s[(i, j)].clone());
        }
    }
    g
}

/// `K_r(X+α) = X − α − 2 r_#(α)`.
pub fn k_r<T: Scalar>(r: &RMatrix<T>) -> Matrix<T> {
    let n = r.dim();
    let sharp = r.sharp();
    let two = T::from_i64(2);
    let mut k = k0::<T>(n);
    for i in 0..n {
        for j in 0..n {
            k[(i, n + j)] = -(two.clone() * sharp[(i, j)].clone());
        }
    }
    k
}

/// `ξ(X+α) = X − r_#(α) + α`.
pub fn xi_matrix<T: Scalar>(r: &RMatrix<T>) -> Matrix<T> {
    let n = r.dim();
    let sharp = r.sharp();
    let mut m = Matrix::<T>::identity(2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, n + j)] = -sharp[(i, j)].clone();
        }
    }
    m
}

/// `[X+α, Y+β]_φ = [X,Y]_S + [α,β]_T + T_α^*Y − T_β^*X + S_X^*β − S_Y^*α`,
/// optionally with `Δ(α, β)` added to the `A` part.
fn pair_bracket<T: Scalar>(
    s: &ProductTensor<T>,
    t: Option<&ProductTensor<T>>,
    delta: Option<&Tensor<T>>,
    u: &[T],
    v: &[T],
) -> Vec<T> {
    let n = s.dim();
    let (x, a) = split(u, n);
    let (y, b) = split(v, n);
    let mut top = s_bracket(s, x, y);
    let mut bottom = dual_action(s, x).mul_vec(b);
    axpy(&-T::one(), &dual_action(s, y).mul_vec(a), &mut bottom);
    if let Some(t) = t {
        axpy(&T::one(), &dual_of_product(t, a).mul_vec(y), &mut top);
        axpy(&-T::one(), &dual_of_product(t, b).mul_vec(x), &mut top);
        axpy(&T::one(), &vec_sub(&t.mul(a, b), &t.mul(b, a)), &mut bottom);
    }
    if let Some(d) = delta {
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                let c = ai.clone() * bj.clone();
                if !c.is_zero() {
                    axpy(&c, d.fibre(&[i, j]), &mut top);
                }
            }
        }
    }
    join(top, bottom)
}

fn bracket_on_basis<T: Scalar>(m: usize, f: impl Fn(&[T], &[T]) -> Vec<T>) -> BracketTensor<T> {
    BracketTensor::from_upper(m, |i, j| f(&unit(m, i), &unit(m, j)))
}

/// `[X+α, Y+β]^▷ = [X,Y]_S + S_X^*β − S_Y^*α`.
pub fn triangular_bracket<T: Scalar>(s: &ProductTensor<T>) -> BracketTensor<T> {
    bracket_on_basis(2 * s.dim(), |u, v| pair_bracket(s, None, None, u, v))
}

/// `[,]^{▷,r} = [,]^▷ + Δ(r)(α, β)`.
pub fn triangular_bracket_r<T: Scalar>(s: &ProductTensor<T>, r: &RMatrix<T>) -> BracketTensor<T> {
    let d = delta_r(s, r);
    bracket_on_basis(2 * s.dim(), |u, v| pair_bracket(s, None, Some(&d), u, v))
}

/// The bracket `[,]_φ` of a pair of products `S` on `A` and `T` on `A*`.
pub fn pair_bracket_tensor<T: Scalar>(s: &ProductTensor<T>, t: &ProductTensor<T>) -> BracketTensor<T> {
    bracket_on_basis(2 * s.dim(), |u, v| pair_bracket(s, Some(t), None, u, v))
}

/// `[,]^r`: the pair bracket with `T` induced by `r`.
pub fn build_bracket_r<T: Scalar>(s: &ProductTensor<T>, r: &RMatrix<T>) -> BracketTensor<T> {
    pair_bracket_tensor(s, &t_from_r(s, r))
}

/// `∇_{X+α}(Y+β) = S_X Y + T_α^* Y + S_X^* β + T_α β` as a product on `Φ(A)`.
pub fn pair_connection<T: Scalar>(s: &ProductTensor<T>, t: &ProductTensor<T>) -> ProductTensor<T> {
    let n = s.dim();
    StructureTensor::from_products(2 * n, |i, j| {
        let (u, v) = (unit::<T>(2 * n, i), unit::<T>(2 * n, j));
        let (x, a) = split(&u, n);
        let (y, b) = split(&v, n);
        let mut top = s.mul(x, y);
        axpy(&T::one(), &dual_of_product(t, a).mul_vec(y), &mut top);
        let mut bottom = dual_action(s, x).mul_vec(b);
        axpy(&T::one(), &t.mul(a, b), &mut bottom);
        join(top, bottom)
    })
}

fn require_left_symmetric<T: Scalar>(s: &ProductTensor<T>, tol: f64) -> Result<()> {
    let d = s.left_symmetry_defect();
    if d.is_negligible(tol) {
        Ok(())
    } else {
        Err(Error::NotLeftSymmetric {
            defect: d.value_f64(),
        })
    }
}

/// `Φ(A)` with `[,]^▷`, `⟨,⟩₀` and `K₀`.
pub fn build_triangular<T: Scalar>(s: &ProductTensor<T>, tol: f64) -> Result<PhaseSpace<T>> {
    require_left_symmetric(s, tol)?;
    let n = s.dim();
    PhaseSpace::new(triangular_bracket(s), hyperbolic_metric(n), k0(n))
}

/// `Φ(A)` with `[,]^{▷,r}`, `⟨,⟩_r` and `K_r`, gated on `S²𝔞 = 0` and
/// `Q_XΔ(r) = 0`.
pub fn build_phase_space_r<T: Scalar>(
    s: &ProductTensor<T>,
    r: &RMatrix<T>,
    tol: f64,
) -> Result<PhaseSpace<T>> {
    let suite = check_quasi_s_matrix(s, r, tol)?;
    for name in ["s2_a", "q_delta"] {
        if let Some(rep) = suite.get(name).filter(|rep| rep.status.is_failure()) {
            return Err(Error::Incompatible(format!(
                "{name} defect {:e} at {:?}",
                rep.defect, rep.witness
            )));
        }
    }
    build_phase_space_r_unchecked(s, r)
}

/// Same data as [`build_phase_space_r`] without the quasi-S gate, for
/// studying failures.
pub fn build_phase_space_r_unchecked<T: Scalar>(
    s: &ProductTensor<T>,
    r: &RMatrix<T>,
) -> Result<PhaseSpace<T>> {
    if s.dim() != r.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: r.dim(),
        });
    }
    PhaseSpace::new(triangular_bracket_r(s, r), metric_r(r), k_r(r))
}

/// `Φ(A)` with `[,]_φ`, `⟨,⟩₀` and `K₀` for a Lie-extendible pair.
pub fn build_from_pair<T: Scalar>(
    s: &ProductTensor<T>,
    t: &ProductTensor<T>,
    tol: f64,
) -> Result<PhaseSpace<T>> {
    if s.dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: t.dim(),
        });
    }
    let suite = lie_extendible_check(s, t, tol);
    if let Some(bad) = suite.items.iter().find(|r| r.status.is_failure()) {
        return Err(Error::Incompatible(format!(
            "{} defect {:e}",
            bad.name, bad.defect
        )));
    }
    let n = s.dim();
    PhaseSpace::new(pair_bracket_tensor(s, t), hyperbolic_metric(n), k0(n))
}

/// Checks `ξ[u, v]^{▷,r} = [ξu, ξv]^r` on all basis pairs.
pub fn xi_check<T: Scalar>(s: &ProductTensor<T>, r: &RMatrix<T>, tol: f64) -> CheckReport {
    let m = 2 * s.dim();
    let xi = xi_matrix(r);
    let left = triangular_bracket_r(s, r);
    let right = build_bracket_r(s, r);
    let mut d = Defect::new();
    for i in 0..m {
        for j in i + 1..m {
            let lhs = xi.mul_vec(left.basis_bracket(i, j));
            let rhs = right.bracket(&xi.column(i), &xi.column(j));
            d.update_all(&vec_sub(&lhs, &rhs), &[i, j]);
        }
    }
    CheckReport::from_defect("xi_isomorphism", &d, tol)
}
