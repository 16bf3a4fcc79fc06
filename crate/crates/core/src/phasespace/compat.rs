//! Compatibility of a product `S` on `A` with a product `T` on `A*`.

use crate::linalg::{unit, vec_sub, Matrix};
use crate::report::{CheckReport, CheckSuite};
use crate::scalar::Scalar;
use crate::tensor::Tensor;

use super::products::{
    dual_action, dual_of_product, s_second_derivative, t_from_r, tuple_defect, ProductTensor,
};
use super::rmatrix::RMatrix;

fn commutator<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    a.matmul(b).sub(&b.matmul(a))
}

/// `R(X, α)Y = [S_X, T_α^*]Y + S_{T_α^*X}Y − T^*_{S_X^*α}Y`, shape
/// `(X, α, Y, n)`.
pub fn mixed_curvature_on_a<T: Scalar>(s: &ProductTensor<T>, t: &ProductTensor<T>) -> Tensor<T> {
    let n = s.dim();
    let ls: Vec<Matrix<T>> = (0..n).map(|x| s.left_mult_basis(x)).collect();
    let dt: Vec<Matrix<T>> = (0..n).map(|a| dual_of_product(t, &unit(n, a))).collect();
    let mut blocks = Vec::with_capacity(n * n);
    for x in 0..n {
        let sx_star = dual_action(s, &unit(n, x));
        for a in 0..n {
            let tx = dt[a].column(x);
            let sa = sx_star.column(a);
            let m = commutator(&ls[x], &dt[a])
                .add(&s.left_mult(&tx))
                .sub(&dual_of_product(t, &sa));
            blocks.push(m);
        }
    }
    Tensor::from_fn(&[n, n, n, n], |i| blocks[i[0] * n + i[1]][(i[3], i[2])].clone())
}

/// `R(α, X)β = [T_α, S_X^*]β + T_{S_X^*α}β − S^*_{T_α^*X}β`, shape
/// `(α, X, β, n)`.
pub fn mixed_curvature_on_dual<T: Scalar>(
    s: &ProductTensor<T>,
    t: &ProductTensor<T>,
) -> Tensor<T> {
    let n = s.dim();
    let sd: Vec<Matrix<T>> = (0..n).map(|x| dual_action(s, &unit(n, x))).collect();
    let mut blocks = Vec::with_capacity(n * n);
    for a in 0..n {
        let ta = t.left_mult_basis(a);
        let ta_star = dual_of_product(t, &unit(n, a));
        for x in 0..n {
            let sa = sd[x].column(a);
            let tx = ta_star.column(x);
            let m = commutator(&ta, &sd[x])
                .add(&t.left_mult(&sa))
                .sub(&dual_action(s, &tx));
            blocks.push(m);
        }
    }
    Tensor::from_fn(&[n, n, n, n], |i| blocks[i[0] * n + i[1]][(i[3], i[2])].clone())
}

/// Swaps the first and third axes of a `(p, q, r, n)` tensor and subtracts:
/// `D(p, q, r) = R(p, q)r − R(r, q)p`.
fn swap_defect<T: Scalar>(r: &Tensor<T>) -> Tensor<T> {
    let n = r.shape()[0];
    Tensor::from_vector_fn(&[n, n, n, n], |i| {
        vec_sub(r.fibre(&[i[0], i[1], i[2]]), r.fibre(&[i[2], i[1], i[0]]))
    })
}

/// Lie-extendibility of `(S, T)`: each product is left-symmetric and
/// `R(X,α)Y = R(Y,α)X`, `R(α,X)β = R(β,X)α` on all basis tuples.
pub fn lie_extendible_check<T: Scalar>(
    s: &ProductTensor<T>,
    t: &ProductTensor<T>,
    tol: f64,
) -> CheckSuite {
    let mut suite = CheckSuite::new("lie_extendible");
    suite.push(CheckReport::from_defect(
        "s_left_symmetric",
        &s.left_symmetry_defect(),
        tol,
    ));
    suite.push(CheckReport::from_defect(
        "t_left_symmetric",
        &t.left_symmetry_defect(),
        tol,
    ));
    let on_a = swap_defect(&mixed_curvature_on_a(s, t));
    suite.push(CheckReport::from_defect(
        "curvature_x_alpha_y",
        &tuple_defect(&on_a, 3),
        tol,
    ));
    let on_dual = swap_defect(&mixed_curvature_on_dual(s, t));
    suite.push(CheckReport::from_defect(
        "curvature_alpha_x_beta",
        &tuple_defect(&on_dual, 3),
        tol,
    ));
    suite
}

/// Both sides of the curvature identities for `T` induced by an arbitrary
/// `r` on a left-symmetric `S`.
///
/// Returns `R(X,α)Y − R(Y,α)X` with shape `(X, α, Y, n)`, and
/// `⟨R(α,X)β − R(β,X)α, Y⟩ + 2 S²_{X,Y}𝔞(α, β)` with shape `(X, Y, α, β)`.
/// Both vanish identically.
pub fn curvature_identity_defects<T: Scalar>(
    s: &ProductTensor<T>,
    r: &RMatrix<T>,
) -> (Tensor<T>, Tensor<T>) {
    let n = s.dim();
    let t = t_from_r(s, r);
    let first = swap_defect(&mixed_curvature_on_a(s, &t));
    let anti = swap_defect(&mixed_curvature_on_dual(s, &t));
    let s2a = s_second_derivative(s, &r.skew());
    let two = T::from_i64(2);
    let second = Tensor::from_fn(&[n, n, n, n], |i| {
        let (x, y, a, b) = (i[0], i[1], i[2], i[3]);
        anti.get(&[a, x, b, y]).clone() + two.clone() * s2a.get(&[x, y, a, b]).clone()
    });
    (first, second)
}
