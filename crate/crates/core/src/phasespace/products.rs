//! Products on `A` and `A*` over a point base. The anchor is zero, so every
//! `ρ(X).f` term of the general formulas is dropped.
//!
//! Conventions: `S_X` is left multiplication, with matrix `L_X` whose column
//! `j` is `X · e_j`. The dual action on covectors is `S_X^* = −L_Xᵀ`.

use crate::algcore::StructureTensor;
use crate::error::{Error, Result};
use crate::linalg::{axpy, unit, vec_sub, Matrix};
use crate::report::{CheckReport, CheckSuite, Defect};
use crate::scalar::Scalar;
use crate::tensor::Tensor;

use super::rmatrix::RMatrix;

/// A product tensor, on `A` or on `A*` depending on context.
pub type ProductTensor<T> = StructureTensor<T>;

/// Matrix of `S_X^*` acting on covector coordinates.
pub fn dual_action<T: Scalar>(s: &ProductTensor<T>, x: &[T]) -> Matrix<T> {
    s.left_mult(x).transpose().neg()
}

/// `[X, Y]_S = S_X Y − S_Y X`.
pub fn s_bracket<T: Scalar>(s: &ProductTensor<T>, x: &[T], y: &[T]) -> Vec<T> {
    vec_sub(&s.mul(x, y), &s.mul(y, x))
}

/// Matrix of `S_X m` for a bilinear form `m` on `A*`:
/// `(S_X m)(α, β) = −m(S_X^*α, β) − m(α, S_X^*β) = (L_X m + m L_Xᵀ)(α, β)`.
fn derivative_along<T: Scalar>(lx: &Matrix<T>, m: &Matrix<T>) -> Matrix<T> {
    lx.matmul(m).add(&m.matmul(&lx.transpose()))
}

/// The product `T` on `A*` induced by `r`:
/// `⟨T_αβ, X⟩ = (S_X r)(α, β) + ⟨S^*_{r_#α} β, X⟩`.
pub fn t_from_r<T: Scalar>(s: &ProductTensor<T>, r: &RMatrix<T>) -> ProductTensor<T> {
    let n = s.dim();
    let sr: Vec<Matrix<T>> = (0..n)
        .map(|x| derivative_along(&s.left_mult_basis(x), r.matrix()))
        .collect();
    let lr: Vec<Matrix<T>> = (0..n)
        .map(|i| s.left_mult(&r.sharp_apply(&unit(n, i))))
        .collect();
    StructureTensor::from_fn(n, |i, j, x| {
        // ⟨S^*_{r_#e_i*} e_j*, e_x⟩ = −(L_{r_#e_i*})_{jx}
        sr[x][(i, j)].clone() - lr[i][(j, x)].clone()
    })
}

/// Matrix of `T_α^* X = r_#(S_X^*α) + [r_#α, X]_S` acting on `A`.
pub fn t_star<T: Scalar>(s: &ProductTensor<T>, r: &RMatrix<T>, alpha: &[T]) -> Matrix<T> {
    let n = s.dim();
    let ra = r.sharp_apply(alpha);
    let cols: Vec<Vec<T>> = (0..n)
        .map(|x| {
            let ex = unit(n, x);
            let sxa = dual_action(s, &ex).mul_vec(alpha);
            let mut col = r.sharp_apply(&sxa);
            axpy(&T::one(), &s_bracket(s, &ra, &ex), &mut col);
            col
        })
        .collect();
    Matrix::from_columns(&cols).expect("square")
}

/// Dual of a product on `A*`: `⟨T_α^* X, β⟩ = −⟨X, T_α β⟩`.
pub fn dual_of_product<T: Scalar>(t: &ProductTensor<T>, alpha: &[T]) -> Matrix<T> {
    t.left_mult(alpha).transpose().neg()
}

/// `[α, β]_T = T_α β − T_β α`.
fn t_bracket<T: Scalar>(t: &ProductTensor<T>, a: &[T], b: &[T]) -> Vec<T> {
    vec_sub(&t.mul(a, b), &t.mul(b, a))
}

/// `Δ(r)(α, β) = r_#([α, β]_T) − [r_#α, r_#β]_S` on dual-basis pairs;
/// shape `(n, n, n)` with the last axis in `A`.
pub fn delta_r<T: Scalar>(s: &ProductTensor<T>, r: &RMatrix<T>) -> Tensor<T> {
    let n = s.dim();
    let t = t_from_r(s, r);
    Tensor::from_vector_fn(&[n, n, n], |idx| {
        let (a, b) = (unit(n, idx[0]), unit(n, idx[1]));
        let lhs = r.sharp_apply(&t_bracket(&t, &a, &b));
        vec_sub(&lhs, &s_bracket(s, &r.sharp_apply(&a), &r.sharp_apply(&b)))
    })
}

/// `(S_X m)(e_i*, e_j*)` with shape `(X, i, j)`.
pub fn s_derivative<T: Scalar>(s: &ProductTensor<T>, m: &Matrix<T>) -> Tensor<T> {
    let n = s.dim();
    let per_x: Vec<Matrix<T>> = (0..n)
        .map(|x| derivative_along(&s.left_mult_basis(x), m))
        .collect();
    Tensor::from_fn(&[n, n, n], |i| per_x[i[0]][(i[1], i[2])].clone())
}

/// `S²_{X,Y} m = S_X S_Y m − S_{S_X Y} m` with shape `(X, Y, i, j)`.
pub fn s_second_derivative<T: Scalar>(s: &ProductTensor<T>, m: &Matrix<T>) -> Tensor<T> {
    let n = s.dim();
    let l: Vec<Matrix<T>> = (0..n).map(|x| s.left_mult_basis(x)).collect();
    let sy: Vec<Matrix<T>> = l.iter().map(|ly| derivative_along(ly, m)).collect();
    let mut blocks = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let xy = s.basis_product(x, y).to_vec();
            let first = derivative_along(&l[x], &sy[y]);
            let second = derivative_along(&s.left_mult(&xy), m);
            blocks.push(first.sub(&second));
        }
    }
    Tensor::from_fn(&[n, n, n, n], |i| blocks[i[0] * n + i[1]][(i[2], i[3])].clone())
}

/// Evaluates the bilinear map stored in a `(n, n, n)` tensor.
fn eval_bilinear<T: Scalar>(d: &Tensor<T>, a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len();
    let mut out = vec![T::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            axpy(&(ai.clone() * bj.clone()), d.fibre(&[i, j]), &mut out);
        }
    }
    out
}

/// `Q_X Δ(r)(α, β) = [X, Δ(α, β)]_S − Δ(S_X^*α, β) − Δ(α, S_X^*β)` with
/// shape `(X, α, β, n)`.
pub fn q_delta<T: Scalar>(s: &ProductTensor<T>, r: &RMatrix<T>) -> Tensor<T> {
    let n = s.dim();
    let delta = delta_r(s, r);
    let duals: Vec<Matrix<T>> = (0..n).map(|x| dual_action(s, &unit(n, x))).collect();
    Tensor::from_vector_fn(&[n, n, n, n], |idx| {
        let (x, i, j) = (idx[0], idx[1], idx[2]);
        let ex = unit(n, x);
        let mut out = s_bracket(s, &ex, delta.fibre(&[i, j]));
        let sa = duals[x].column(i);
        let sb = duals[x].column(j);
        let t1 = eval_bilinear(&delta, &sa, &unit(n, j));
        let t2 = eval_bilinear(&delta, &unit(n, i), &sb);
        axpy(&-T::one(), &t1, &mut out);
        axpy(&-T::one(), &t2, &mut out);
        out
    })
}

/// Curvature of a product at a point,
/// `R(a, b)c = p_a p_b c − p_b p_a c − p_{[a,b]} c`, shape `(a, b, c, n)`.
pub fn curvature<T: Scalar>(p: &ProductTensor<T>) -> Tensor<T> {
    let n = p.dim();
    let l: Vec<Matrix<T>> = (0..n).map(|a| p.left_mult_basis(a)).collect();
    let mut blocks = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let br = vec_sub(p.basis_product(a, b), p.basis_product(b, a));
            let comm = l[a].matmul(&l[b]).sub(&l[b].matmul(&l[a]));
            blocks.push(comm.sub(&p.left_mult(&br)));
        }
    }
    Tensor::from_fn(&[n, n, n, n], |i| blocks[i[0] * n + i[1]][(i[3], i[2])].clone())
}

/// Collapses a tensor defect so the witness names the input tuple only,
/// dropping the trailing output coordinates.
pub(crate) fn tuple_defect<T: Scalar>(t: &Tensor<T>, arity: usize) -> Defect<T> {
    let d = t.defect();
    match d.witness() {
        Some(w) if w.len() > arity => {
            let mut out = Defect::new();
            out.update(d.value(), &w[..arity]);
            out
        }
        _ => d,
    }
}

/// Reports the quasi-S-matrix conditions separately: `S𝔞 = 0`, `S²𝔞 = 0`,
/// `Q_XΔ(r) = 0`, and the anchor condition, which is vacuous at a point.
pub fn check_quasi_s_matrix<T: Scalar>(
    s: &ProductTensor<T>,
    r: &RMatrix<T>,
    tol: f64,
) -> Result<CheckSuite> {
    if s.dim() != r.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: r.dim(),
        });
    }
    let ls = s.left_symmetry_defect();
    if !ls.is_negligible(tol) {
        return Err(Error::NotLeftSymmetric {
            defect: ls.value_f64(),
        });
    }
    let a = r.skew();
    let mut suite = CheckSuite::new("quasi_s_matrix");
    suite.push(CheckReport::from_defect(
        "s_a",
        &tuple_defect(&s_derivative(s, &a), 3),
        tol,
    ));
    suite.push(CheckReport::from_defect(
        "s2_a",
        &tuple_defect(&s_second_derivative(s, &a), 4),
        tol,
    ));
    suite.push(CheckReport::from_defect(
        "q_delta",
        &tuple_defect(&q_delta(s, r), 3),
        tol,
    ));
    suite.push(CheckReport::vacuous(
        "anchor_delta",
        "anchor is zero over a point",
    ));
    Ok(suite)
}

/// Basis of `{r : S_X r = 0 for all X}`, optionally restricted to symmetric
/// `r`. Solved as the kernel of the linear map `r ↦ (S_{e_x} r)_x`.
pub fn s_parallel_basis<T: Scalar>(
    s: &ProductTensor<T>,
    symmetric: bool,
    tol: f64,
) -> Vec<Matrix<T>> {
    let n = s.dim();
    let mut generators = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if symmetric && q < p {
                continue;
            }
            let mut m = Matrix::<T>::zeros(n, n);
            m[(p, q)] = T::one();
            if symmetric {
                m[(q, p)] = T::one();
            }
            generators.push(m);
        }
    }
    let l: Vec<Matrix<T>> = (0..n).map(|x| s.left_mult_basis(x)).collect();
    let columns: Vec<Vec<T>> = generators
        .iter()
        .map(|g| {
            l.iter()
                .flat_map(|lx| derivative_along(lx, g).entries().to_vec())
                .collect()
        })
        .collect();
    let system = Matrix::from_columns(&columns).expect("equal-length columns");
    system
        .nullspace(tol)
        .into_iter()
        .map(|coeffs| {
            let mut m = Matrix::<T>::zeros(n, n);
            for (c, g) in coeffs.iter().zip(&generators) {
                if !c.is_zero() {
                    m = m.add(&g.scale(c));
                }
            }
            m
        })
        .collect()
}
