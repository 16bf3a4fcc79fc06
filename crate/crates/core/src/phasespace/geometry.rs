//! Metric geometry of a Lie algebra at a point: Levi-Civita product,
//! Nijenhuis torsion, the Chevalley-Eilenberg differential of a 2-form and
//! the para-Kähler verification suite.

use crate::algcore::{jacobi_check, BilinearForm, BracketTensor, StructureTensor};
use crate::error::{Error, Result};
use crate::linalg::{unit, vec_add, vec_sub, Matrix};
use crate::report::{CheckReport, CheckSuite, Defect, Status};
use crate::scalar::Scalar;
use crate::tensor::Tensor;

use super::products::{tuple_defect, ProductTensor};
use super::space::PhaseSpace;

/// The unique torsion-free metric product, from
/// `2⟨∇_a b, c⟩ = ⟨[c,a],b⟩ + ⟨[c,b],a⟩ + ⟨[a,b],c⟩`.
pub fn levi_civita_point<T: Scalar>(
    b: &BracketTensor<T>,
    g: &BilinearForm<T>,
    tol: f64,
) -> Result<ProductTensor<T>> {
    let m = b.dim();
    if g.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: g.dim(),
        });
    }
    let gm = g.matrix();
    let ginv = gm.inverse(tol)?;
    let half = T::half();
    let pair = |u: &[T], v: &[T]| gm.bilinear(u, v);
    Ok(StructureTensor::from_products(m, |i, j| {
        let (ea, eb) = (unit::<T>(m, i), unit::<T>(m, j));
        let ab = b.basis_bracket(i, j);
        let w: Vec<T> = (0..m)
            .map(|c| {
                let ec = unit::<T>(m, c);
                let s = pair(b.basis_bracket(c, i), &eb)
                    + pair(b.basis_bracket(c, j), &ea)
                    + pair(ab, &ec);
                half.clone() * s
            })
            .collect();
        ginv.mul_vec(&w)
    }))
}

/// `N_K(a,b) = [Ka,Kb] − K[Ka,b] − K[a,Kb] + K²[a,b]`, shape `(a, b, m)`.
pub fn nijenhuis<T: Scalar>(b: &BracketTensor<T>, k: &Matrix<T>) -> Tensor<T> {
    let m = b.dim();
    let k2 = k.matmul(k);
    Tensor::from_vector_fn(&[m, m, m], |idx| {
        let (ka, kb) = (k.column(idx[0]), k.column(idx[1]));
        let (ea, eb) = (unit::<T>(m, idx[0]), unit::<T>(m, idx[1]));
        let mut out = b.bracket(&ka, &kb);
        out = vec_sub(&out, &k.mul_vec(&b.bracket(&ka, &eb)));
        out = vec_sub(&out, &k.mul_vec(&b.bracket(&ea, &kb)));
        vec_add(&out, &k2.mul_vec(b.basis_bracket(idx[0], idx[1])))
    })
}

/// `dω(a,b,c) = −ω([a,b],c) − ω([b,c],a) − ω([c,a],b)`, shape `(a, b, c)`.
pub fn ce_differential_2form<T: Scalar>(b: &BracketTensor<T>, omega: &BilinearForm<T>) -> Tensor<T> {
    let m = b.dim();
    let w = omega.matrix();
    Tensor::from_fn(&[m, m, m], |i| {
        let (a, bb, c) = (i[0], i[1], i[2]);
        let term = |x: usize, y: usize, z: usize| w.bilinear(b.basis_bracket(x, y), &unit(m, z));
        -(term(a, bb, c) + term(bb, c, a) + term(c, a, bb))
    })
}

/// `(∇_a K)` for every basis `a`, as the defect tensor `∇_a(K e_j) − K ∇_a e_j`
/// with shape `(a, j, m)`.
pub fn covariant_derivative_of_k<T: Scalar>(nabla: &ProductTensor<T>, k: &Matrix<T>) -> Tensor<T> {
    let m = nabla.dim();
    let blocks: Vec<Matrix<T>> = (0..m)
        .map(|a| {
            let na = nabla.left_mult_basis(a);
            na.matmul(k).sub(&k.matmul(&na))
        })
        .collect();
    Tensor::from_fn(&[m, m, m], |i| blocks[i[0]][(i[2], i[1])].clone())
}

fn matrix_defect<T: Scalar>(m: &Matrix<T>) -> Defect<T> {
    let mut d = Defect::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            d.update(&m[(i, j)], &[i, j]);
        }
    }
    d
}

/// Runs every para-Kähler axiom as its own line item, followed by the
/// consistency line `status(∇K = 0) = status(N_K = 0 and dΩ_K = 0)`.
///
/// The consistency line is vacuous when its hypotheses (nondegenerate
/// metric, Jacobi, `K² = Id`, skew `K`) fail.
pub fn para_kahler_verify<T: Scalar>(p: &PhaseSpace<T>, tol: f64) -> CheckSuite {
    let m = p.dim();
    let g = p.metric();
    let k = p.k();
    let mut suite = CheckSuite::new("para_kahler");

    let nondegenerate = g.matrix().inverse(tol).is_ok();
    suite.push(if nondegenerate {
        CheckReport::new("metric_nondegenerate", Status::Pass, 0.0)
    } else {
        CheckReport::new("metric_nondegenerate", Status::Fail, 1.0).with_note("metric is singular")
    });

    let jacobi = jacobi_check(p.bracket(), tol);
    suite.push(jacobi.clone());

    let involution = k.matmul(k).sub(&Matrix::identity(m));
    suite.push(CheckReport::from_defect(
        "k_involution",
        &matrix_defect(&involution),
        tol,
    ));

    let skew = k.transpose().matmul(g.matrix()).add(&g.matrix().matmul(k));
    suite.push(CheckReport::from_defect("k_skew", &matrix_defect(&skew), tol));

    let nabla_k = if nondegenerate {
        let nabla = levi_civita_point(p.bracket(), g, tol).expect("metric is invertible");
        CheckReport::from_defect(
            "nabla_k",
            &tuple_defect(&covariant_derivative_of_k(&nabla, k), 2),
            tol,
        )
    } else {
        CheckReport::skipped("nabla_k", "metric is degenerate")
    };
    suite.push(nabla_k.clone());

    let nij = CheckReport::from_defect(
        "nijenhuis",
        &tuple_defect(&nijenhuis(p.bracket(), k), 2),
        tol,
    );
    suite.push(nij.clone());

    let d_omega = CheckReport::from_defect(
        "d_omega",
        &ce_differential_2form(p.bracket(), p.omega()).defect(),
        tol,
    );
    suite.push(d_omega.clone());

    let hypotheses = nondegenerate
        && jacobi.passed()
        && suite.status_of("k_involution") == Some(Status::Pass)
        && suite.status_of("k_skew") == Some(Status::Pass);
    suite.push(if hypotheses {
        let lhs = nabla_k.passed();
        let rhs = nij.passed() && d_omega.passed();
        let line = CheckReport::new("equivalence_consistency", Status::from_bool(lhs == rhs), 0.0);
        line.with_note(format!("nabla_k={lhs} nijenhuis_and_d_omega={rhs}"))
    } else {
        CheckReport::vacuous(
            "equivalence_consistency",
            "needs a nondegenerate metric, a Lie bracket and a skew involution",
        )
    });
    suite
}
