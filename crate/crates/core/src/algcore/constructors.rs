use crate::scalar::Scalar;

use super::structure::{Algebra, StructureTensor};

/// Which basis of a truncated polynomial algebra to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// `ℝ[x]/(x^k)` with basis `1, x, ..., x^{k-1}`.
    Unital,
    /// The maximal ideal of `ℝ[x]/(x^{k+1})`: basis `x, x², ..., x^k`.
    Nilpotent,
}

/// Truncated polynomial algebra of dimension `k`.
pub fn truncated_polynomial<T: Scalar>(k: usize, kind: Truncation) -> Algebra<T> {
    let mut st = StructureTensor::zeros(k);
    for i in 0..k {
        for j in 0..k {
            // Degrees of e_i, e_j and of their product.
            let target = match kind {
                Truncation::Unital => i + j,
                Truncation::Nilpotent => i + j + 1,
            };
            if target < k {
                st.set(i, j, target, T::one());
            }
        }
    }
    Algebra::new(st)
}

/// The one-dimensional algebra `e · e = e`.
pub fn field<T: Scalar>() -> Algebra<T> {
    let mut st = StructureTensor::zeros(1);
    st.set(0, 0, 0, T::one());
    Algebra::new(st)
}

pub fn zero_algebra<T: Scalar>(dim: usize) -> Algebra<T> {
    Algebra::new(StructureTensor::zeros(dim))
}

/// `A ⊕ B` with `A · B = 0`.
pub fn direct_sum<T: Scalar>(a: &Algebra<T>, b: &Algebra<T>) -> Algebra<T> {
    let (na, nb) = (a.dim(), b.dim());
    let (sa, sb) = (a.structure(), b.structure());
    let st = StructureTensor::from_fn(na + nb, |i, j, k| {
        if i < na && j < na && k < na {
            sa.coeff(i, j, k).clone()
        } else if i >= na && j >= na && k >= na {
            sb.coeff(i - na, j - na, k - na).clone()
        } else {
            T::zero()
        }
    });
    let algebra = Algebra::new(st);
    match (a.basis_names(), b.basis_names()) {
        (Some(x), Some(y)) => {
            let names = x.iter().chain(y).cloned().collect();
            algebra.with_names(names).expect("lengths add up")
        }
        _ => algebra,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn unital_truncation_is_commutative_associative() {
        for k in 1..=5 {
            let a = truncated_polynomial::<Rational>(k, Truncation::Unital);
            assert!(a.is_commutative_associative());
            let b = truncated_polynomial::<Rational>(k, Truncation::Nilpotent);
            assert!(b.is_commutative_associative());
        }
    }

    #[test]
    fn direct_sum_of_fields_is_diagonal() {
        let f = field::<Rational>();
        let d = direct_sum(&direct_sum(&f, &f), &f);
        assert_eq!(d.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let want = if i == j && j == k { 1 } else { 0 };
                    assert_eq!(d.structure().coeff(i, j, k), &Rational::from_i64(want));
                }
            }
        }
    }
}
