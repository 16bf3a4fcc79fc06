//! Matrix exponential: exact finite series for nilpotent matrices and
//! scaling-and-squaring with the degree-6 diagonal Padé approximant.

use crate::linalg::Matrix;
use crate::scalar::Scalar;

const PADE_DEGREE: usize = 6;

/// Largest 1-norm handled without squaring. For the (6,6) approximant the
/// truncation error at this norm is far below `1e-12`.
const THETA: f64 = 0.5;

/// `Σ_{k<n} A^k / k!` when `A^n = 0` for `n = dim A`, else `None`.
pub fn exp_nilpotent<T: Scalar>(a: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.rows();
    let tol = a.zero_threshold();
    let mut term = Matrix::identity(n);
    let mut sum = Matrix::identity(n);
    for k in 1..=n {
        term = term.matmul(a).scale(&(T::one() / T::from_i64(k as i64)));
        if k == n {
            return term.is_zero(tol).then_some(sum);
        }
        sum = sum.add(&term);
    }
    // n == 0
    Some(sum)
}

fn one_norm(a: &Matrix<f64>) -> f64 {
    (0..a.cols())
        .map(|j| (0..a.rows()).map(|i| a[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn pade_coefficients() -> [f64; PADE_DEGREE + 1] {
    let q = PADE_DEGREE;
    let mut c = [0.0; PADE_DEGREE + 1];
    c[0] = 1.0;
    for k in 1..=q {
        c[k] = c[k - 1] * (q - k + 1) as f64 / (k * (2 * q - k + 1)) as f64;
    }
    c
}

/// Dense `exp(A)` in binary64.
pub fn expm(a: &Matrix<f64>) -> Matrix<f64> {
    let n = a.rows();
    let norm = one_norm(a);
    let squarings = if norm > THETA {
        (norm / THETA).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.scale(&0.5f64.powi(squarings));
    let c = pade_coefficients();
    let mut num = Matrix::identity(n);
    let mut den = Matrix::identity(n);
    let mut power = Matrix::identity(n);
    for (k, ck) in c.iter().enumerate().skip(1) {
        power = power.matmul(&scaled);
        let term = power.scale(ck);
        num = num.add(&term);
        den = if k % 2 == 0 { den.add(&term) } else { den.sub(&term) };
    }
    let mut r = den
        .inverse(0.0)
        .expect("Padé denominator is invertible for small norms")
        .matmul(&num);
    for _ in 0..squarings {
        r = r.matmul(&r);
    }
    r
}

/// `exp(A)` in the scalar field of `A`: the exact series when `A` is
/// nilpotent, the binary64 Padé approximant otherwise.
pub fn exp_matrix<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    exp_nilpotent(a).unwrap_or_else(|| expm(&a.to_f64()).map(|x| T::from_f64(*x)))
}
