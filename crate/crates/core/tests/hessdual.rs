mod common;

use common::{commutative_associative_pool, q, rng};
use hessalg::algcore::{power_ideal, signature, Algebra, BilinearForm, Signature};
use hessalg::hessdual::*;
use hessalg::linalg::unit;
use hessalg::scalar::ratio;
use hessalg::smooth;
use hessalg::{Matrix, Rational, Scalar, Status};
use proptest::prelude::*;
use rand::Rng;

fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

/// Christoffel symbols `Γ^k_ij` of `g = H(μ)^{-1}` in the linear coordinates
/// of `A*`, using `∂_l H_ab = c_ab^l`.
fn christoffel<T: Scalar>(a: &Algebra<T>, mu: &[T]) -> Vec<Vec<Vec<T>>> {
    let n = a.dim();
    let st = a.structure();
    let h = Matrix::from_fn(n, n, |i, j| {
        (0..n).fold(T::zero(), |acc, k| acc + st.coeff(i, j, k).clone() * mu[k].clone())
    });
    let g = h.inverse(h.zero_threshold()).unwrap();
    let dg: Vec<Matrix<T>> = (0..n)
        .map(|l| {
            let dh = Matrix::from_fn(n, n, |i, j| st.coeff(i, j, l).clone());
            g.matmul(&dh).matmul(&g).neg()
        })
        .collect();
    (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n).fold(T::zero(), |acc, m| {
                                let s = dg[i][(j, m)].clone() + dg[j][(i, m)].clone() - dg[m][(i, j)].clone();
                                acc + T::half() * h[(k, m)].clone() * s
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn gamma_apply<T: Scalar>(gamma: &[Vec<Vec<T>>], u: &[T], v: &[T]) -> Vec<T> {
    gamma
        .iter()
        .map(|gk| {
            let mut s = T::zero();
            for (i, row) in gk.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    s = s + c.clone() * u[i].clone() * v[j].clone();
                }
            }
            s
        })
        .collect()
}

/// Open-orbit points with rational coordinates for the invertible examples.
fn open_points() -> Vec<(usize, Vec<Rational>)> {
    vec![
        (1, qs(&[1, -2, 3])),
        (2, qs(&[1, 2])),
        (2, qs(&[-3, 1])),
        (4, qs(&[1, 2, 3])),
        (4, qs(&[2, -1, 5])),
        (6, qs(&[1, 1, 1, 1])),
        (6, qs(&[2, -1, 3, -2])),
    ]
}

#[test]
fn h_matrix_on_the_worked_examples() {
    let a4 = example_algebra::<Rational>(4).unwrap();
    let g = h_matrix(&a4, &qs(&[1, 2, 3])).unwrap();
    assert_eq!(g.h.to_rows(), vec![qs(&[2, 0, 1]), qs(&[0, 0, 2]), qs(&[1, 2, 3])]);
    let a2 = example_algebra::<Rational>(2).unwrap();
    let g = h_matrix(&a2, &qs(&[1, 2])).unwrap();
    assert_eq!(g.h.to_rows(), vec![qs(&[1, 2]), qs(&[2, -1])]);
    assert_eq!(g.rank, 2);
    assert_eq!(h_matrix(&a2, &qs(&[0, 0])).unwrap().rank, 0);
    let zero = h_matrix(&a4, &qs(&[0, 0, 0])).unwrap();
    assert!(zero.h.is_zero(0.0));
    assert_eq!(orbit_rank(&a4, &qs(&[1, 0, 1])).unwrap(), 2);
}

#[test]
fn h_matrix_requires_commutative_associative() {
    let lsa = common::non_associative_lsa();
    assert!(matches!(
        h_matrix(&lsa, &qs(&[1, 1])),
        Err(hessalg::Error::NotCommutativeAssociative)
    ));
}

#[test]
fn fundamental_vectors() {
    let a6 = example_algebra::<Rational>(6).unwrap();
    let mu = qs(&[3, -1, 4, 2]);
    assert_eq!(fundamental_vector(&a6, &unit(4, 0), &mu).unwrap(), mu);
    assert_eq!(fundamental_vector(&a6, &qs(&[0, 0, 0, 0]), &mu).unwrap(), qs(&[0; 4]));
    let a3 = example_algebra::<Rational>(3).unwrap();
    for mu in [qs(&[1, 2, 3]), qs(&[-5, 0, 7])] {
        assert_eq!(fundamental_vector(&a3, &unit(3, 2), &mu).unwrap(), qs(&[0, 0, 0]));
    }
}

#[test]
fn orbit_map_examples() {
    let a3 = example_algebra::<Rational>(3).unwrap();
    assert_eq!(orbit_map(&a3, &qs(&[1, 0, 0]), &qs(&[0, 0, 2])).unwrap(), qs(&[1, 2, 2]));
    let mu = qs(&[4, -1, 3]);
    assert_eq!(orbit_map(&a3, &qs(&[0, 0, 0]), &mu).unwrap(), mu);
    // General exact closed form (x + ay + (a²/2 + b)z, y + az, z).
    let (a, b, c) = (ratio(2, 3), ratio(-1, 2), ratio(5, 1));
    let got = orbit_map(&a3, &[a.clone(), b.clone(), c], &mu).unwrap();
    let (x, y, z) = (mu[0].clone(), mu[1].clone(), mu[2].clone());
    let want = vec![
        x + a.clone() * y.clone() + (ratio(1, 2) * a.clone() * a.clone() + b) * z.clone(),
        y + a * z.clone(),
        z,
    ];
    assert_eq!(got, want);
    let d = diagonal_algebra::<f64>(2);
    let p = orbit_map(&d, &[2f64.ln(), 0.0], &[3.0, 5.0]).unwrap();
    assert!((p[0] - 6.0).abs() < 1e-12 && (p[1] - 5.0).abs() < 1e-12);
}

#[test]
fn ambient_metrics() {
    let a2 = example_algebra::<Rational>(2).unwrap();
    let g = ambient_metric(&a2, &qs(&[1, 2])).unwrap();
    assert_eq!(
        g.matrix().to_rows(),
        vec![vec![ratio(1, 5), ratio(2, 5)], vec![ratio(2, 5), ratio(-1, 5)]]
    );
    let a1 = diagonal_algebra::<Rational>(1);
    assert_eq!(ambient_metric(&a1, &qs(&[2])).unwrap().matrix()[(0, 0)], ratio(1, 2));
    let a6 = example_algebra::<Rational>(6).unwrap();
    let g = ambient_metric(&a6, &qs(&[1, 1, 1, 1])).unwrap();
    assert!(g.is_symmetric());
    let a3 = example_algebra::<Rational>(3).unwrap();
    assert!(ambient_metric(&a3, &qs(&[0, 0, 1])).is_err());
}

#[test]
fn orbit_metrics() {
    let a3 = example_algebra::<Rational>(3).unwrap();
    let m = orbit_metric(&a3, &qs(&[0, 0, 1])).unwrap();
    assert_eq!(m.gram, vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    assert_eq!(m.signature, Signature::new(1, 1, 0));
    let empty = orbit_metric(&a3, &qs(&[0, 0, 0])).unwrap();
    assert!(empty.gram.is_empty() && empty.generators.is_empty());
    let a6 = example_algebra::<Rational>(6).unwrap();
    assert_eq!(orbit_metric(&a6, &qs(&[1, 1, 1, 1])).unwrap().signature, Signature::new(2, 2, 0));
}

#[test]
fn levi_civita_of_h_inverse_is_half_the_product() {
    for (idx, mu) in open_points() {
        let a = example_algebra::<Rational>(idx).unwrap();
        let n = a.dim();
        let gamma = christoffel(&a, &mu);
        let st = a.structure();
        for i in 0..n {
            for j in 0..n {
                let xa = fundamental_vector(&a, &unit(n, i), &mu).unwrap();
                let xb = fundamental_vector(&a, &unit(n, j), &mu).unwrap();
                let xab = fundamental_vector(&a, &st.mul(&unit(n, i), &unit(n, j)), &mu).unwrap();
                // ∇⁰_{X_a}X_b = X_{ab}, so D_{X_a}X_b = X_{ab} + Γ(X_a, X_b).
                let d: Vec<Rational> = xab
                    .iter()
                    .zip(gamma_apply(&gamma, &xa, &xb))
                    .map(|(x, g)| x + g)
                    .collect();
                let half: Vec<Rational> = xab.iter().map(|x| ratio(1, 2) * x).collect();
                assert_eq!(d, half, "example {idx} at {mu:?}, ({i},{j})");
            }
        }
        let table = connection_table(&a, 0.0);
        assert!(table.flatness.passed());
        assert_eq!(table.levi_civita.basis_product(0, 0), &st.basis_product(0, 0).iter().map(|x| ratio(1, 2) * x).collect::<Vec<_>>()[..]);
        assert!(table.dual.is_zero());
    }
}

#[test]
fn koszul_alpha_matches_the_trace_of_gamma() {
    for (idx, mu) in open_points() {
        let a = example_algebra::<Rational>(idx).unwrap();
        let n = a.dim();
        let gamma = christoffel(&a, &mu);
        for i in 0..n {
            let xa = fundamental_vector(&a, &unit(n, i), &mu).unwrap();
            let tr = (0..n).fold(q(0), |acc, k| {
                acc + (0..n).fold(q(0), |s, l| s + gamma[k][l][k].clone() * xa[l].clone())
            });
            assert_eq!(tr, koszul_alpha(&a, &unit(n, i)), "example {idx}, e{}", i + 1);
        }
    }
    let a4 = example_algebra::<Rational>(4).unwrap();
    assert_eq!(koszul_alpha(&a4, &unit(3, 2)), ratio(-3, 2));
}

/// `∇γ` and `∇α` by central differences of the exact Christoffel field.
#[test]
fn hessian_curvature_and_beta_by_finite_differences() {
    for (idx, mu) in open_points() {
        let a = example_algebra::<f64>(idx).unwrap();
        let n = a.dim();
        let st = a.structure().clone();
        let mu: Vec<f64> = mu.iter().map(|x| x.to_f64()).collect();
        let h = 1e-5;
        for i in 0..n {
            let xa = fundamental_vector(&a, &unit(n, i), &mu).unwrap();
            let shifted = |s: f64| -> Vec<f64> { mu.iter().zip(&xa).map(|(m, x)| m + s * h * x).collect() };
            let (gp, gm) = (christoffel(&a, &shifted(1.0)), christoffel(&a, &shifted(-1.0)));
            for j in 0..n {
                let xb = fundamental_vector(&a, &unit(n, j), &mu).unwrap();
                for k in 0..n {
                    let xc = fundamental_vector(&a, &unit(n, k), &mu).unwrap();
                    let up = gamma_apply(&gp, &xb, &xc);
                    let dn = gamma_apply(&gm, &xb, &xc);
                    let want = hessian_curvature(&a, &unit(n, i), &unit(n, j), &unit(n, k), &mu).unwrap();
                    for m in 0..n {
                        let fd = (up[m] - dn[m]) / (2.0 * h);
                        assert!((fd - want[m]).abs() < 1e-6 * (1.0 + want[m].abs()), "example {idx}");
                    }
                }
                let alpha = |g: &Vec<Vec<Vec<f64>>>| (0..n).fold(0.0, |acc, k| acc + (0..n).fold(0.0, |s, l| s + g[k][l][k] * xb[l]));
                let beta_fd = (alpha(&gp) - alpha(&gm)) / (2.0 * h);
                let beta = koszul_beta(&a, &unit(n, i), &unit(n, j));
                assert!((beta_fd - beta).abs() < 1e-6, "example {idx}");
            }
            let _ = &st;
        }
    }
}

#[test]
fn hessian_curvature_on_the_worked_examples() {
    let a3 = example_algebra::<Rational>(3).unwrap();
    let e1 = unit(3, 0);
    assert_eq!(hessian_curvature(&a3, &e1, &e1, &e1, &qs(&[2, 3, 5])).unwrap(), qs(&[0, 0, 0]));
    let a6 = example_algebra::<Rational>(6).unwrap();
    let e2 = unit(4, 1);
    assert_eq!(
        hessian_curvature(&a6, &e2, &e2, &e2, &qs(&[0, 0, 0, 1])).unwrap(),
        vec![ratio(1, 2), q(0), q(0), q(0)]
    );
    assert!(hessian_curvature_check(&a3, 0.0).passed());
    let a1 = example_algebra::<Rational>(1).unwrap();
    let r = hessian_curvature_check(&a1, 0.0);
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.witness, Some(vec![1, 1, 1]));
}

#[test]
fn codazzi_and_special_real_on_the_pool() {
    for (name, a) in commutative_associative_pool() {
        assert!(codazzi_tensor_check(&a, 0.0).passed(), "{name}");
        assert!(connection_table(&a, 0.0).flatness.passed(), "{name}");
        assert!(koszul_beta_symmetry(&a, 0.0).passed(), "{name}");
        assert!(koszul_identity(&a, 0.0).passed(), "{name}");
        let a4_zero = power_ideal(a.structure(), 4, 0.0).is_empty();
        assert_eq!(special_real_check(&a, 0.0).passed(), a4_zero, "{name}");
        assert_eq!(hessian_curvature_check(&a, 0.0).passed(), a4_zero, "{name}");
    }
    let a3 = example_algebra::<Rational>(3).unwrap();
    assert!(special_real_check(&a3, 0.0).passed());
    let a5 = example_algebra::<Rational>(5).unwrap();
    let r = special_real_check(&a5, 0.0);
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.witness, Some(vec![1, 1, 1, 1]));
    assert_eq!(power_ideal(a5.structure(), 4, 0.0), vec![unit::<Rational>(4, 3)]);
}

fn exact_hessian_matches_gram(kind: KnownPotential, a: &Algebra<f64>, p: &[f64]) -> f64 {
    let phi = Potential { kind, dim: a.dim() };
    let hess = smooth::hessian(&phi, p);
    let g = h_matrix(a, p).unwrap();
    let dirs: Vec<Vec<f64>> = g.tangent_indices.iter().map(|&i| g.h.column(i)).collect();
    let mut worst = 0.0f64;
    for (r, di) in dirs.iter().enumerate() {
        for (c, dj) in dirs.iter().enumerate() {
            let v: f64 = (0..p.len())
                .map(|x| (0..p.len()).map(|y| di[x] * hess[x][y] * dj[y]).sum::<f64>())
                .sum();
            worst = worst.max((v - g.gram[(r, c)]).abs() / (1.0 + g.gram[(r, c)].abs()));
        }
    }
    worst
}

#[test]
fn published_potentials_against_exact_hessians() {
    use KnownPotential::*;
    let cases: [(usize, KnownPotential, Vec<f64>); 9] = [
        (1, EntropyLike, vec![1.0, -2.0, 3.0]),
        (2, ComplexLog, vec![1.0, 2.0]),
        (3, CubicNilpotent, vec![0.5, -1.0, 2.0]),
        (3, CubicLine, vec![0.5, 3.0, 0.0]),
        (4, UnitalThree, vec![1.0, 2.0, 3.0]),
        (4, UnitalThree, vec![1.0, -2.0, 3.0]),
        (5, QuarticNilpotent, vec![0.3, -0.7, 1.1, 1.0]),
        (6, UnitalFour, vec![1.0, 1.0, 1.0, 1.0]),
        (6, UnitalFour, vec![0.4, -1.0, 2.0, -3.0]),
    ];
    for (idx, kind, p) in cases {
        let a = example_algebra::<f64>(idx).unwrap();
        assert!(exact_hessian_matches_gram(kind, &a, &p) < 1e-12, "example {idx} at {p:?}");
        let r = potential_check(&a, &Potential { kind, dim: a.dim() }, &p, &FdConfig::default()).unwrap();
        assert!(r.passed(), "example {idx}: {r:?}");
    }
}

/// The printed potential of the quartic example only fits the hyperplane
/// `t = 1`; with `z²y/(2t²)` in place of `z²y/(2t)` it fits every `t ≠ 0`.
#[test]
fn quartic_potential_depends_on_the_hyperplane() {
    let a = example_algebra::<f64>(5).unwrap();
    let printed = Potential {
        kind: KnownPotential::QuarticNilpotent,
        dim: 4,
    };
    let corrected = FnPotential {
        f: |v: &[f64]| {
            let (x, y, z, t) = (v[0], v[1], v[2], v[3]);
            z.powi(4) / (12.0 * t.powi(3)) + y * y / (2.0 * t) - z * z * y / (2.0 * t * t) + x * z / t
        },
        guard: |v: &[f64]| v[3].abs() > 1e-3,
    };
    for t in [1.0, 2.0, -1.0, -0.5] {
        let p = [0.3, -0.7, 1.1, t];
        let printed_ok = exact_hessian_matches_gram(KnownPotential::QuarticNilpotent, &a, &p) < 1e-12;
        assert_eq!(printed_ok, t == 1.0, "t = {t}");
        assert_eq!(
            potential_check(&a, &printed, &p, &FdConfig::default()).unwrap().passed(),
            t == 1.0
        );
        assert!(potential_check(&a, &corrected, &p, &FdConfig::default()).unwrap().passed(), "t = {t}");
    }
}

#[test]
fn harmonic_potential_of_the_complex_example() {
    let phi = Potential {
        kind: KnownPotential::ComplexLog,
        dim: 2,
    };
    let cfg = FdConfig {
        tol: 1e-6,
        ..FdConfig::default()
    };
    let a = example_algebra::<f64>(2).unwrap();
    for p in orbit_sample(&a, &[1.0, 2.0], 10, DEFAULT_SEED).unwrap() {
        assert!(harmonic_check(&phi, &p, &cfg).unwrap().passed(), "{p:?}");
        // Exact Laplacian through hyper-dual numbers.
        let h = smooth::hessian(&phi, &p);
        assert!((h[0][0] + h[1][1]).abs() < 1e-12);
    }
    assert!(harmonic_check(&phi, &[1.0, 2.0, 3.0], &cfg).is_err());
}

#[test]
fn catalog_run() {
    let reports = run_catalog(&CatalogConfig::default());
    assert_eq!(reports.len(), 6);
    for r in &reports {
        assert!(!r.has_failures(), "example {}: {:?}", r.example, r.checks);
    }
    for idx in [1, 2, 3, 6] {
        assert!(reports[idx - 1].discrepancies.is_empty(), "{:?}", reports[idx - 1].discrepancies);
    }
    let ex4 = &reports[3].discrepancies;
    assert_eq!(ex4.len(), 2);
    assert!(ex4.iter().all(|d| d.contains("metric in coordinates")));
    let ex5 = &reports[4].discrepancies;
    assert!(ex5.iter().any(|d| d.contains("A^4") && d.contains("dim A^4 = 1")));
    assert!(ex5.iter().any(|d| d.contains("special real")));
    assert!(ex5.iter().any(|d| d.contains("potential [hyperplane t=2]")));
    assert!(!ex5.iter().any(|d| d.contains("potential [hyperplane t=1]")));
    let again = run_catalog(&CatalogConfig::default());
    assert_eq!(reports, again);
}

#[test]
fn catalog_entries_have_published_products() {
    let c = catalog();
    assert_eq!(c.len(), 6);
    let ex6 = c[5].algebra.structure();
    assert_eq!(ex6.mul(&unit(4, 1), &unit(4, 2)), unit::<Rational>(4, 3));
    assert_eq!(c[1].algebra.structure(), complex_algebra::<Rational>().structure());
}

fn pool_strategy() -> impl Strategy<Value = usize> {
    0..commutative_associative_pool().len()
}

fn vec_in(n: usize, lo: f64, hi: f64) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(lo..hi, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_law(idx in pool_strategy(), seed in 0u64..1000) {
        let (_, a) = &commutative_associative_pool()[idx];
        let af = a.to_f64();
        let n = a.dim();
        let mut g = rng(seed);
        let mut draw = || (0..n).map(|_| g.random_range(-1.0..=1.0)).collect::<Vec<f64>>();
        let (u, v, mu) = (draw(), draw(), draw());
        let uv: Vec<f64> = u.iter().zip(&v).map(|(x, y)| x + y).collect();
        let lhs = orbit_map(&af, &uv, &mu).unwrap();
        let rhs = orbit_map(&af, &u, &orbit_map(&af, &v, &mu).unwrap()).unwrap();
        let scale = 1.0 + lhs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (x, y) in lhs.iter().zip(&rhs) {
            prop_assert!((x - y).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn h_is_symmetric_with_rank_of_the_fundamental_span(idx in pool_strategy(), entries in vec_in(6, -3.0, 3.0)) {
        let (_, a) = &commutative_associative_pool()[idx];
        let n = a.dim();
        let mu: Vec<Rational> = entries[..n].iter().map(|x| Rational::from_f64((x * 4.0).round() / 4.0)).collect();
        let g = h_matrix(a, &mu).unwrap();
        prop_assert!(g.h.transpose() == g.h);
        let cols: Vec<Vec<Rational>> = (0..n).map(|i| fundamental_vector(a, &unit(n, i), &mu).unwrap()).collect();
        let span = Matrix::from_columns(&cols).unwrap();
        prop_assert_eq!(span.clone(), g.h.clone());
        prop_assert_eq!(span.rank(0.0), g.rank);
        let gram = BilinearForm::new(g.gram.clone(), 0.0).unwrap();
        let sig = signature(&gram).unwrap();
        prop_assert_eq!(sig.z, 0);
        prop_assert_eq!(sig, g.signature);
        // Metric descent: a vanishing fundamental vector kills its row of H.
        for i in 0..n {
            if cols[i].iter().all(|x| *x == q(0)) {
                prop_assert!(g.h.row(i).iter().all(|x| *x == q(0)));
            }
        }
        if g.rank == n {
            let inv = ambient_metric(a, &mu).unwrap();
            prop_assert_eq!(g.h.transpose().matmul(inv.matrix()).matmul(&g.h), g.h.clone());
        }
    }

    #[test]
    fn rank_is_constant_along_orbits(idx in pool_strategy(), base in vec_in(6, -2.0, 2.0), seed in 0u64..1000) {
        let (_, a) = &commutative_associative_pool()[idx];
        let n = a.dim();
        let base = &base[..n];
        let af = a.to_f64();
        let r0 = orbit_rank(&af, base).unwrap();
        for p in orbit_sample(&af, base, 4, seed).unwrap() {
            prop_assert_eq!(orbit_rank(&af, &p).unwrap(), r0);
        }
    }
}
