use crate::linalg::{unit, Matrix};
use crate::scalar::Scalar;

use super::structure::StructureTensor;

/// Row-reduced basis of the span of `vectors` in dimension `dim`.
fn span_basis<T: Scalar>(vectors: Vec<Vec<T>>, tol: f64) -> Vec<Vec<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors).expect("equal-length vectors");
    let (r, pivots) = m.rref(tol);
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

/// Bases of `A^1, ..., A^kmax`, where `A^1 = A` and
/// `A^m = span{ A^p · A^q : p + q = m }` (all parenthesizations).
pub fn power_ideals<T: Scalar>(st: &StructureTensor<T>, kmax: usize, tol: f64) -> Vec<Vec<Vec<T>>> {
    let n = st.dim();
    let mut powers: Vec<Vec<Vec<T>>> = Vec::with_capacity(kmax);
    if kmax == 0 {
        return powers;
    }
    powers.push((0..n).map(|i| unit(n, i)).collect());
    for m in 2..=kmax {
        let mut gens = Vec::new();
        for p in 1..m {
            let q = m - p;
            for x in &powers[p - 1] {
                for y in &powers[q - 1] {
                    gens.push(st.mul(x, y));
                }
            }
        }
        powers.push(span_basis(gens, tol));
    }
    powers
}

/// Row-reduced basis of `A^k` (`k >= 1`).
pub fn power_ideal<T: Scalar>(st: &StructureTensor<T>, k: usize, tol: f64) -> Vec<Vec<T>> {
    assert!(k >= 1, "power ideals start at k = 1");
    power_ideals(st, k, tol).pop().unwrap_or_default()
}

/// Whether every vector of `sub` lies in the span of `space`.
pub fn subspace_contains<T: Scalar>(space: &[Vec<T>], sub: &[Vec<T>], tol: f64) -> bool {
    if sub.is_empty() {
        return true;
    }
    if space.is_empty() {
        return false;
    }
    let base = Matrix::from_rows(space.to_vec()).unwrap().rank(tol);
    let mut all = space.to_vec();
    all.extend(sub.iter().cloned());
    Matrix::from_rows(all).unwrap().rank(tol) == base
}
