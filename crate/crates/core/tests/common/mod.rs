#![allow(dead_code)]

use hessalg::algcore::{direct_sum, truncated_polynomial, Algebra, StructureTensor, Truncation};
use hessalg::hessdual::example_algebra;
use hessalg::phasespace::RMatrix;
use hessalg::{Matrix, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// `e1e1 = −e1`, `e1e2 = e2`: left-symmetric but not associative.
pub fn non_associative_lsa() -> Algebra<Rational> {
    let mut st = StructureTensor::zeros(2);
    st.set(0, 0, 0, q(-1));
    st.set(0, 1, 1, q(1));
    Algebra::new(st)
}

/// Left-symmetric algebras of dimension at most 5.
pub fn left_symmetric_pool() -> Vec<(String, Algebra<Rational>)> {
    let mut pool = Vec::new();
    for k in 1..=6 {
        pool.push((format!("example {k}"), example_algebra(k).unwrap()));
    }
    for k in 1..=5 {
        pool.push((format!("nilpotent x^1..x^{k}"), truncated_polynomial(k, Truncation::Nilpotent)));
        pool.push((format!("unital R[x]/x^{k}"), truncated_polynomial(k, Truncation::Unital)));
    }
    pool.push(("non-associative".into(), non_associative_lsa()));
    pool.push((
        "non-associative + nilpotent".into(),
        direct_sum(&non_associative_lsa(), &truncated_polynomial(2, Truncation::Nilpotent)),
    ));
    for (name, a) in &pool {
        assert!(a.flags().left_symmetric, "{name}");
    }
    pool
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.random_range(-4i64..=4);
    let den = rng.random_range(1i64..=3);
    Rational::new(num.into(), den.into())
}

pub fn random_r(n: usize, rng: &mut ChaCha8Rng) -> RMatrix<Rational> {
    RMatrix::new(Matrix::from_fn(n, n, |_, _| small_rational(rng))).unwrap()
}

pub fn random_combination(basis: &[Matrix<Rational>], n: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n, n);
    for b in basis {
        m = m.add(&b.scale(&small_rational(rng)));
    }
    m
}

/// Commutative associative algebras of dimension at most 6.
pub fn commutative_associative_pool() -> Vec<(String, Algebra<Rational>)> {
    let mut pool: Vec<_> = left_symmetric_pool()
        .into_iter()
        .filter(|(_, a)| a.is_commutative_associative())
        .collect();
    pool.push((
        "C + nilpotent x^1..x^2".into(),
        direct_sum(&example_algebra(2).unwrap(), &truncated_polynomial(2, Truncation::Nilpotent)),
    ));
    pool.push((
        "R[x]/x^3 + R[x]/x^2".into(),
        direct_sum(
            &truncated_polynomial(3, Truncation::Unital),
            &truncated_polynomial(2, Truncation::Unital),
        ),
    ));
    pool
}
