//! Invariants of the orbit pseudo-Hessian structures that reduce to algebra:
//! Hessian curvature, Koszul forms, the connection table, the Codazzi tensor
//! and the special-real condition.

use crate::algcore::{power_ideal, Algebra, StructureTensor};
use crate::error::Result;
use crate::linalg::{unit, vec_sub};
use crate::report::{CheckReport, Defect, Status};
use crate::scalar::Scalar;

use super::gram::fundamental_vector;

fn triple<T: Scalar>(st: &StructureTensor<T>, a: &[T], b: &[T], c: &[T]) -> Vec<T> {
    st.mul(&st.mul(a, b), c)
}

/// `Q(X_a, X_b)X_c = ½ X_{a·b·c}` at `μ`.
pub fn hessian_curvature<T: Scalar>(alg: &Algebra<T>, a: &[T], b: &[T], c: &[T], mu: &[T]) -> Result<Vec<T>> {
    let abc = triple(alg.structure(), a, b, c);
    let x = fundamental_vector(alg, &abc, mu)?;
    Ok(x.into_iter().map(|v| T::half() * v).collect())
}

/// `Q ≡ 0` as a field: `½ L_{e_a e_b e_c} = 0` for every basis triple. The
/// witness is the worst triple.
pub fn hessian_curvature_check<T: Scalar>(alg: &Algebra<T>, tol: f64) -> CheckReport {
    let st = alg.structure();
    let n = st.dim();
    let mut d = Defect::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let abc = triple(st, &unit(n, a), &unit(n, b), &unit(n, c));
                let l = st.left_mult(&abc).scale(&T::half());
                d.update_all(l.entries(), &[a, b, c]);
            }
        }
    }
    CheckReport::from_defect("hessian_curvature_zero", &d, tol)
}

/// First Koszul form `α(X_a) = −½ tr L_a`.
pub fn koszul_alpha<T: Scalar>(alg: &Algebra<T>, a: &[T]) -> T {
    -(T::half() * alg.structure().left_mult(a).trace())
}

/// Second Koszul form `β(X_a, X_b) = ½ tr L_{a·b}`.
pub fn koszul_beta<T: Scalar>(alg: &Algebra<T>, a: &[T], b: &[T]) -> T {
    let st = alg.structure();
    T::half() * st.left_mult(&st.mul(a, b)).trace()
}

/// `β(e_i, e_j) − β(e_j, e_i)` over basis pairs.
pub fn koszul_beta_symmetry<T: Scalar>(alg: &Algebra<T>, tol: f64) -> CheckReport {
    let n = alg.dim();
    let mut d = Defect::new();
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (unit(n, i), unit(n, j));
            d.update(&(koszul_beta(alg, &ei, &ej) - koszul_beta(alg, &ej, &ei)), &[i, j]);
        }
    }
    CheckReport::from_defect("koszul_beta_symmetry", &d, tol)
}

/// `β(e_i, e_j) + α(X_{e_i e_j})` over basis pairs.
pub fn koszul_identity<T: Scalar>(alg: &Algebra<T>, tol: f64) -> CheckReport {
    let n = alg.dim();
    let st = alg.structure();
    let mut d = Defect::new();
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (unit(n, i), unit(n, j));
            let v = koszul_beta(alg, &ei, &ej) + koszul_alpha(alg, &st.mul(&ei, &ej));
            d.update(&v, &[i, j]);
        }
    }
    CheckReport::from_defect("koszul_identity", &d, tol)
}

/// Coefficients of `∇`, `D` and `∇'` on the fundamental fields:
/// `∇_{X_a}X_b = X_{a·b}`, `D_{X_a}X_b = ½X_{a·b}`, `∇'_{X_a}X_b = 0`.
#[derive(Debug, Clone)]
pub struct ConnectionTable<T> {
    pub flat: StructureTensor<T>,
    pub levi_civita: StructureTensor<T>,
    pub dual: StructureTensor<T>,
    pub flatness: CheckReport,
}

/// Builds the table and checks flatness of `D`:
/// `R^D(X_a,X_b)X_c = ¼(a·(b·c) − b·(a·c))`, using `[X_a, X_b] = 0`.
pub fn connection_table<T: Scalar>(alg: &Algebra<T>, tol: f64) -> ConnectionTable<T> {
    let st = alg.structure();
    let n = st.dim();
    let quarter = T::half() * T::half();
    let mut d = Defect::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ea, eb, ec) = (unit::<T>(n, a), unit(n, b), unit(n, c));
                let r = vec_sub(&st.mul(&ea, &st.mul(&eb, &ec)), &st.mul(&eb, &st.mul(&ea, &ec)));
                for v in &r {
                    d.update(&(quarter.clone() * v.clone()), &[a, b, c]);
                }
            }
        }
    }
    ConnectionTable {
        flat: st.clone(),
        levi_civita: st.map(|x| T::half() * x.clone()),
        dual: StructureTensor::zeros(n),
        flatness: CheckReport::from_defect("levi_civita_flatness", &d, tol),
    }
}

/// Total symmetry of `(u, v, w) ↦ (u·v·w)^*` over basis triples.
pub fn codazzi_tensor_check<T: Scalar>(alg: &Algebra<T>, tol: f64) -> CheckReport {
    let st = alg.structure();
    let n = st.dim();
    let t = |a: usize, b: usize, c: usize| triple(st, &unit(n, a), &unit(n, b), &unit(n, c));
    let mut d = Defect::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let base = t(a, b, c);
                for (x, y, z) in [(b, a, c), (a, c, b), (c, b, a), (b, c, a), (c, a, b)] {
                    d.update_all(&vec_sub(&base, &t(x, y, z)), &[a, b, c]);
                }
            }
        }
    }
    CheckReport::from_defect("codazzi_tensor", &d, tol)
}

/// `𝒟T(du*,dv*,dw*,dx*) = −2(u·v·w·x)^*` vanishes on basis 4-tuples. The
/// result is cross-checked against the power ideal `A⁴`; disagreement is a
/// failure whatever the defect.
pub fn special_real_check<T: Scalar>(alg: &Algebra<T>, tol: f64) -> CheckReport {
    let st = alg.structure();
    let n = st.dim();
    let two = T::from_i64(2);
    let mut d = Defect::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let abc = triple(st, &unit(n, a), &unit(n, b), &unit(n, c));
                for x in 0..n {
                    let v = st.mul(&abc, &unit(n, x));
                    for k in &v {
                        d.update(&(two.clone() * k.clone()), &[a, b, c, x]);
                    }
                }
            }
        }
    }
    let a4 = power_ideal(st, 4, tol).len();
    let report = CheckReport::from_defect("special_real", &d, tol);
    let agrees = report.passed() == (a4 == 0);
    let note = format!("dim A^4 = {a4}");
    if agrees {
        report.with_note(note)
    } else {
        let mut r = report.with_note(format!("{note}; disagrees with the power ideal"));
        r.status = Status::Fail;
        r
    }
}
