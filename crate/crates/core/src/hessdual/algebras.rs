//! Structure constants of the six worked commutative associative algebras.

use crate::algcore::{Algebra, StructureTensor};
use crate::scalar::Scalar;

/// Builds a commutative algebra from 1-based products `e_i e_j = c e_k`,
/// filling in `e_j e_i` as well.
fn commutative<T: Scalar>(dim: usize, products: &[(usize, usize, usize, i64)]) -> StructureTensor<T> {
    let mut st = StructureTensor::zeros(dim);
    for &(i, j, k, c) in products {
        st.set(i - 1, j - 1, k - 1, T::from_i64(c));
        st.set(j - 1, i - 1, k - 1, T::from_i64(c));
    }
    st
}

/// `ℝ^n` as a product of `n` copies of `ℝ`: `e_i e_i = e_i`.
pub fn diagonal_algebra<T: Scalar>(n: usize) -> Algebra<T> {
    let products: Vec<_> = (1..=n).map(|i| (i, i, i, 1)).collect();
    Algebra::new(commutative(n, &products))
}

/// The complex numbers: `e1e1 = e1`, `e1e2 = e2`, `e2e2 = −e1`.
pub fn complex_algebra<T: Scalar>() -> Algebra<T> {
    Algebra::new(commutative(2, &[(1, 1, 1, 1), (1, 2, 2, 1), (2, 2, 1, -1)]))
}

/// `e1e1 = e2`, `e1e2 = e3`.
pub fn cubic_nilpotent<T: Scalar>() -> Algebra<T> {
    Algebra::new(commutative(3, &[(1, 1, 2, 1), (1, 2, 3, 1)]))
}

/// `e1e1 = e2`, `e1e3 = e1`, `e2e3 = e2`, `e3e3 = e3`.
pub fn unital_three<T: Scalar>() -> Algebra<T> {
    Algebra::new(commutative(
        3,
        &[(1, 1, 2, 1), (1, 3, 1, 1), (2, 3, 2, 1), (3, 3, 3, 1)],
    ))
}

/// `e1e1 = e2`, `e1e2 = e3`, `e1e3 = e2e2 = e4`.
pub fn quartic_nilpotent<T: Scalar>() -> Algebra<T> {
    Algebra::new(commutative(
        4,
        &[(1, 1, 2, 1), (1, 2, 3, 1), (1, 3, 4, 1), (2, 2, 4, 1)],
    ))
}

/// `e1 e_i = e_i`, `e2e2 = e3`, `e2e3 = e4`.
pub fn unital_four<T: Scalar>() -> Algebra<T> {
    Algebra::new(commutative(
        4,
        &[
            (1, 1, 1, 1),
            (1, 2, 2, 1),
            (1, 3, 3, 1),
            (1, 4, 4, 1),
            (2, 2, 3, 1),
            (2, 3, 4, 1),
        ],
    ))
}

/// Dimension used for the diagonal example in the catalog.
pub const DIAGONAL_DIM: usize = 3;

/// The algebra of worked example `index` (1-based, `1..=6`).
pub fn example_algebra<T: Scalar>(index: usize) -> Option<Algebra<T>> {
    Some(match index {
        1 => diagonal_algebra(DIAGONAL_DIM),
        2 => complex_algebra(),
        3 => cubic_nilpotent(),
        4 => unital_three(),
        5 => quartic_nilpotent(),
        6 => unital_four(),
        _ => return None,
    })
}
