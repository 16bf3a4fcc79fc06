//! Acceptance criteria 1 to 12. Each prints one `criterion N: PASS|FAIL`
//! line to stdout (visible without `--nocapture`).

use std::io::Write;
use std::process::Command;
use std::time::Instant;

use hessalg::algcore::{check_associative, check_commutative, truncated_polynomial, Algebra, StructureTensor, Truncation};
use hessalg::chartgeom::{
    codazzi_check, d_curvature_fd, hamilton_equiv_check, inverse_hessian_bivector, triple_bracket,
    BivectorField, ChartConfig, LinearBivector, Samples,
};
use hessalg::hessdual::{
    ambient_metric, example_algebra, h_matrix, harmonic_check, hessian_curvature_check, koszul_alpha,
    koszul_beta_symmetry, orbit_map, potential_check, special_real_check, FdConfig, FnPotential,
    KnownPotential, Potential, DEFAULT_SEED,
};
use hessalg::phasespace::{
    build_phase_space_r, check_quasi_s_matrix, curvature_identity_defects, para_kahler_verify,
    s_parallel_basis, xi_check, xi_matrix, PhaseSpace, RMatrix,
};
use hessalg::scalar::ratio;
use hessalg::smooth::{Real, SmoothFn};
use hessalg::{Matrix, Rational, Scalar, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

fn ex(k: usize) -> Algebra<Rational> {
    example_algebra(k).expect("built-in example")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational(g: &mut ChaCha8Rng) -> Rational {
    ratio(g.random_range(-4..=4), g.random_range(1..=3))
}

fn hessalg(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hessalg"))
        .args(args)
        .env_remove("HESSALG_SEED")
        .output()
        .expect("binary runs")
}

/// Six examples and the truncated polynomial algebras of dimension at most 5.
fn pool() -> Vec<(String, Algebra<Rational>)> {
    let mut p: Vec<_> = (1..=6).map(|k| (format!("ex{k}"), ex(k))).collect();
    for k in 1..=5 {
        p.push((format!("nil{k}"), truncated_polynomial(k, Truncation::Nilpotent)));
        p.push((format!("unital{k}"), truncated_polynomial(k, Truncation::Unital)));
    }
    p
}

// ------------------------------------------------------------------ 1

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    for k in 1..=6 {
        let a = ex(k);
        for c in [check_commutative(&a), check_associative(&a)] {
            worst = worst.max(c.defect);
            if !c.passed() || c.defect != 0.0 {
                return outcome(false, format!("ex{k} {} defect {:e}", c.name, c.defect));
            }
        }
    }
    outcome(worst == 0.0, "ex1..ex6 commutative and associative, every defect exactly 0")
}

// ------------------------------------------------------------------ 2

fn criterion_2() -> Outcome {
    let a = ex(3);
    let image = orbit_map(&a, &[q(1), q(0), q(0)], &[q(0), q(0), q(2)]).unwrap();
    let ok = image == vec![q(1), q(2), q(2)];
    // The closed form (x + a y + (a²/2 + b) z, y + a z, z) for u = a e1 + b e2 + c e3.
    let mut g = rng(2);
    let mut closed = true;
    for _ in 0..10 {
        let u: Vec<Rational> = (0..3).map(|_| small_rational(&mut g)).collect();
        let m: Vec<Rational> = (0..3).map(|_| small_rational(&mut g)).collect();
        let (aa, bb) = (u[0].clone(), u[1].clone());
        let expect = vec![
            m[0].clone() + aa.clone() * m[1].clone() + (aa.clone() * aa.clone() / q(2) + bb) * m[2].clone(),
            m[1].clone() + aa * m[2].clone(),
            m[2].clone(),
        ];
        closed &= orbit_map(&a, &u, &m).unwrap() == expect;
    }
    outcome(
        ok && closed,
        format!(
            "Φ(e1,(0,0,2)) = ({}); closed form matches exactly at 10 random rational (u, μ): {closed}",
            image.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        ),
    )
}

// ------------------------------------------------------------------ 3

fn criterion_3() -> Outcome {
    let a = ex(2);
    let af = a.to_f64();
    let mut g = rng(DEFAULT_SEED);
    let mut ranks_ok = true;
    for _ in 0..10 {
        let mu: Vec<f64> = (0..2).map(|_| g.random_range(-2.0..2.0)).collect();
        ranks_ok &= h_matrix(&af, &mu).unwrap().rank == 2;
    }
    let zero_rank = h_matrix(&a, &[q(0), q(0)]).unwrap().rank;
    let m = ambient_metric(&af, &[1.0, 2.0]).unwrap();
    let expect = [[0.2, 0.4], [0.4, -0.2]];
    let mut metric_err = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            metric_err = metric_err.max((m.matrix()[(i, j)] - expect[i][j]).abs());
        }
    }
    let phi = Potential {
        kind: KnownPotential::ComplexLog,
        dim: 2,
    };
    let fd = FdConfig {
        tol: 1e-6,
        ..FdConfig::default()
    };
    let (mut lap, mut n) = (0.0f64, 0);
    while n < 10 {
        let mu = vec![g.random_range(-2.0..2.0), g.random_range(-2.0..2.0)];
        if !phi.in_domain(&mu) {
            continue;
        }
        let r = harmonic_check(&phi, &mu, &fd).unwrap();
        lap = lap.max(r.defect);
        n += 1;
    }
    let pass = ranks_ok && zero_rank == 0 && metric_err <= 1e-12 && lap <= 1e-6;
    outcome(
        pass,
        format!(
            "rank 2 at 10 samples: {ranks_ok}; rank at 0: {zero_rank}; metric error {metric_err:.1e}; max |Δφ| {lap:.1e}"
        ),
    )
}

// ------------------------------------------------------------------ 4

fn criterion_4() -> Outcome {
    let a = ex(4);
    let af = a.to_f64();
    let phi = Potential {
        kind: KnownPotential::UnitalThree,
        dim: 3,
    };
    let fd = FdConfig::default();
    let mut g = rng(DEFAULT_SEED);
    let mut worst = 0.0f64;
    let mut sig_ok = true;
    for sign in [1.0, -1.0] {
        for _ in 0..10 {
            let mu = vec![
                g.random_range(-2.0..2.0),
                sign * g.random_range(0.2..2.0),
                g.random_range(-2.0..2.0),
            ];
            let s = h_matrix(&af, &mu).unwrap().signature;
            sig_ok &= if sign > 0.0 { (s.p, s.q, s.z) == (2, 1, 0) } else { (s.p, s.q, s.z) == (1, 2, 0) };
            if sign > 0.0 {
                worst = worst.max(potential_check(&af, &phi, &mu, &fd).unwrap().defect);
            }
        }
    }
    outcome(
        worst <= 1e-5 && sig_ok,
        format!("max relative error of ∇dφ against H^-1 over 10 points in y>0: {worst:.2e}; signatures (2,1,0)/(1,2,0): {sig_ok}"),
    )
}

// ------------------------------------------------------------------ 5

fn criterion_5() -> Outcome {
    let a = ex(6);
    let s = h_matrix(&a, &[q(1), q(1), q(1), q(1)]).unwrap().signature;
    let af = a.to_f64();
    let phi = Potential {
        kind: KnownPotential::UnitalFour,
        dim: 4,
    };
    let mut g = rng(DEFAULT_SEED);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let t = g.random_range(0.3..2.0) * if g.random_bool(0.5) { 1.0 } else { -1.0 };
        let mu = vec![g.random_range(-2.0..2.0), g.random_range(-2.0..2.0), g.random_range(-2.0..2.0), t];
        worst = worst.max(potential_check(&af, &phi, &mu, &FdConfig::default()).unwrap().defect);
    }
    outcome(
        (s.p, s.q, s.z) == (2, 2, 0) && worst <= 1e-5,
        format!("signature at (1,1,1,1): {s}; potential max relative error {worst:.2e} over 10 samples with |t| ≥ 0.3"),
    )
}

// ------------------------------------------------------------------ 6

fn criterion_6() -> Outcome {
    let sr = special_real_check(&ex(3), 0.0);
    let q3 = hessian_curvature_check(&ex(3), 0.0);
    let q1 = hessian_curvature_check(&ex(1), 0.0);
    let pass = sr.passed() && q3.passed() && q3.defect == 0.0 && q1.status == Status::Fail && q1.witness.is_some();
    outcome(
        pass,
        format!(
            "ex3 special_real {:?}, Q defect {}; ex1 Q {:?} with witness {:?}",
            sr.status, q3.defect, q1.status, q1.witness.unwrap_or_default()
        ),
    )
}

// ------------------------------------------------------------------ 7

/// `z⁴/(12t³) + y²/(2t) − z²y/(2t²) + xz/t`, the potential of every orbit
/// `t = c` of the quartic example.
fn quartic_any_hyperplane(x: &[f64]) -> f64 {
    let (x, y, z, t) = (x[0], x[1], x[2], x[3]);
    z.powi(4) / (12.0 * t.powi(3)) + y * y / (2.0 * t) - z * z * y / (2.0 * t * t) + x * z / t
}

struct Criterion7 {
    a4_reported: bool,
    exit_zero: bool,
    codazzi: bool,
    published_t1: bool,
    published_off_t1: Vec<(String, bool, String)>,
    variant_worst: f64,
}

fn criterion_7_parts() -> Criterion7 {
    let out = hessalg(&["catalog", "run"]);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let e5 = &r["entries"][4];
    let a4_reported = r["discrepancies"]
        .as_array()
        .unwrap()
        .iter()
        .any(|d| d.as_str().unwrap().contains("example 5") && d.as_str().unwrap().contains("dim A^4 = 1"));
    let catalog_codazzi = e5["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "codazzi_tensor" && c["status"] == "pass");
    let h = LinearBivector::new(&ex(5)).unwrap();
    let cfg = ChartConfig::new(
        4,
        Samples::Seeded {
            seed: DEFAULT_SEED,
            count: 10,
            low: -1.0,
            high: 1.0,
        },
    )
    .unwrap();
    let chart_codazzi = codazzi_check(&h, &cfg).unwrap().passed();
    let mut published_t1 = false;
    let mut published_off_t1 = Vec::new();
    for f in e5["facts"].as_array().unwrap() {
        let name = f["name"].as_str().unwrap();
        if !name.starts_with("potential [") {
            continue;
        }
        let agrees = f["agrees"].as_bool().unwrap();
        if name.contains("t=1]") {
            published_t1 = agrees;
        } else {
            published_off_t1.push((name.to_string(), agrees, f["computed"].as_str().unwrap().to_string()));
        }
    }
    let af = ex(5).to_f64();
    let variant = FnPotential {
        f: quartic_any_hyperplane,
        guard: |x: &[f64]| x[3].abs() > 0.1,
    };
    let mut g = rng(DEFAULT_SEED);
    let mut variant_worst = 0.0f64;
    for t in [1.0, 2.0, -1.0, -0.5] {
        for _ in 0..10 {
            let mu = vec![g.random_range(-1.0..1.0), g.random_range(-1.0..1.0), g.random_range(-1.0..1.0), t];
            variant_worst = variant_worst.max(potential_check(&af, &variant, &mu, &FdConfig::default()).unwrap().defect);
        }
    }
    Criterion7 {
        a4_reported,
        exit_zero: out.status.code() == Some(0),
        codazzi: catalog_codazzi && chart_codazzi,
        published_t1,
        published_off_t1,
        variant_worst,
    }
}

fn criterion_7() -> Outcome {
    let c = criterion_7_parts();
    let off_ok = c.published_off_t1.iter().all(|(_, ok, _)| *ok);
    let pass = c.a4_reported && c.exit_zero && c.codazzi && c.published_t1 && off_ok;
    let mut detail = format!(
        "A^4 = span{{e4}} reported: {}; exit 0: {}; Codazzi: {}; published potential on t=1: {}",
        c.a4_reported, c.exit_zero, c.codazzi, c.published_t1
    );
    for (name, ok, computed) in &c.published_off_t1 {
        detail.push_str(&format!("; {name}: {} ({computed})", if *ok { "pass" } else { "FAIL" }));
    }
    if !off_ok {
        detail.push_str(&format!(
            ". Analysis: the published potential restricts to the orbit metric only on t=1 (its z²y/(2t) term should be z²y/(2t²)); with that term the potential passes on t ∈ {{1, 2, -1, -0.5}} with max relative error {:.1e}",
            c.variant_worst
        ));
    }
    outcome(pass, detail)
}

// ------------------------------------------------------------------ 8

fn criterion_8() -> Outcome {
    let alpha = koszul_alpha(&ex(4), &[q(0), q(0), q(1)]);
    let sym: Vec<f64> = (1..=6).map(|k| koszul_beta_symmetry(&ex(k), 0.0).defect).collect();
    outcome(
        alpha == ratio(-3, 2) && sym.iter().all(|d| *d == 0.0),
        format!("α(X_e3) = {alpha} on ex4; β symmetry defects {sym:?}"),
    )
}

// ------------------------------------------------------------------ 9

/// Conjugates `K` by an isometry of `⟨,⟩_r` that is not a bracket
/// automorphism.
fn corrupted(p: &PhaseSpace<Rational>, r: &RMatrix<Rational>) -> PhaseSpace<Rational> {
    let n = p.half_dim();
    let xi = xi_matrix(r);
    let q0 = Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if i == j {
            q(1)
        } else if i == n + 1 && j == 0 {
            q(1)
        } else if i == n && j == 1 {
            q(-1)
        } else {
            q(0)
        }
    });
    let iso = xi.inverse(0.0).unwrap().matmul(&q0).matmul(&xi);
    let k = iso.matmul(p.k()).matmul(&iso.inverse(0.0).unwrap());
    p.with_k(k).unwrap()
}

fn criterion_9() -> Outcome {
    let pool = pool();
    let mut failures = Vec::new();
    let mut corrupted_runs = 0;
    let mut corrupted_detected = 0;
    for case in 0..20 {
        let (name, a) = &pool[case % pool.len()];
        let s = a.structure();
        let n = s.dim();
        let basis = s_parallel_basis(s, true, 0.0);
        let mut g = rng(900 + case as u64);
        let mut m = Matrix::zeros(n, n);
        for b in &basis {
            m = m.add(&b.scale(&small_rational(&mut g)));
        }
        let r = RMatrix::new(m).unwrap();
        let quasi = check_quasi_s_matrix(s, &r, 0.0).unwrap();
        let p = match build_phase_space_r(s, &r, 0.0) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("{name}: build {e}"));
                continue;
            }
        };
        let suite = para_kahler_verify(&p, 0.0);
        let axioms_ok = suite
            .items
            .iter()
            .filter(|c| c.name != "equivalence_consistency")
            .all(|c| c.status == Status::Pass && c.defect == 0.0);
        let xi = xi_check(s, &r, 0.0);
        if !(quasi.all_pass() && axioms_ok && suite.status_of("equivalence_consistency") == Some(Status::Pass) && xi.defect == 0.0) {
            failures.push(format!("{name} (case {case})"));
        }
        if n >= 2 && corrupted_runs < 5 {
            corrupted_runs += 1;
            let bad = para_kahler_verify(&corrupted(&p, &r), 0.0);
            if bad.status_of("equivalence_consistency") != Some(Status::Pass) {
                failures.push(format!("{name}: consistency flag on corrupted K"));
            }
            if bad.status_of("nabla_k") == Some(Status::Fail) {
                corrupted_detected += 1;
            }
        }
    }
    outcome(
        failures.is_empty() && corrupted_runs == 5,
        format!(
            "20 S-parallel pairs: {} failures {failures:?}; {corrupted_runs} corrupted K, consistency flag true on all, ∇K ≠ 0 detected on {corrupted_detected}",
            failures.len()
        ),
    )
}

// ------------------------------------------------------------------ 10

fn criterion_10() -> Outcome {
    let mut pool = pool();
    let mut st = StructureTensor::zeros(2);
    st.set(0, 0, 0, q(-1));
    st.set(0, 1, 1, q(1));
    pool.push(("non-associative".into(), Algebra::new(st)));
    let mut g = rng(1000);
    let mut bad = Vec::new();
    for case in 0..20 {
        let (name, a) = &pool[g.random_range(0..pool.len())];
        let n = a.dim();
        let r = RMatrix::new(Matrix::from_fn(n, n, |_, _| small_rational(&mut g))).unwrap();
        let (first, second) = curvature_identity_defects(a.structure(), &r);
        if !(first.is_zero(0.0) && second.is_zero(0.0)) {
            bad.push(format!("{name} (case {case})"));
        }
    }
    outcome(bad.is_empty(), format!("20 random (S, r): both identities exactly zero except {bad:?}"))
}

// ------------------------------------------------------------------ 11

/// `Σ x_i ln x_i`.
struct Entropy(usize);

impl SmoothFn for Entropy {
    fn dim(&self) -> usize {
        self.0
    }
    fn eval<R: Real>(&self, x: &[R]) -> R {
        x.iter().fold(R::cst(0.0), |acc, &v| acc + v * v.ln_abs())
    }
    fn in_domain(&self, x: &[f64]) -> bool {
        x.iter().all(|v| *v > 0.0)
    }
}

fn tf(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>() / 2.0 + x[0]
}

fn tg(x: &[f64]) -> f64 {
    x.iter().enumerate().map(|(i, v)| ((i + 1) as f64 * v).sin()).sum()
}

fn tm(x: &[f64]) -> f64 {
    (x.iter().sum::<f64>() / 3.0).exp() + x[x.len() - 1].powi(3)
}

fn chart_suite<B: BivectorField>(h: &B, cfg: &ChartConfig) -> Result<f64, String> {
    let c = codazzi_check(h, cfg).map_err(|e| e.to_string())?;
    let ham = hamilton_equiv_check(h, cfg).map_err(|e| e.to_string())?;
    let curv = d_curvature_fd(h, cfg).map_err(|e| e.to_string())?;
    for r in [&c, &ham, &curv] {
        if r.status != Status::Pass {
            return Err(format!("{} {:?} defect {:e}", r.name, r.status, r.defect));
        }
    }
    let mut worst = 0.0f64;
    for x in cfg.points().iter().filter(|x| h.accepts(x)) {
        let t = |a: fn(&[f64]) -> f64, b: fn(&[f64]) -> f64, m: fn(&[f64]) -> f64| {
            triple_bracket(h, &a, &b, &m, x, &cfg.steps).unwrap()
        };
        worst = worst.max((t(tf, tg, tm) + t(tg, tm, tf) + t(tm, tf, tg)).abs());
    }
    Ok(worst)
}

fn criterion_11() -> Outcome {
    let mut worst = 0.0f64;
    let mut errors = Vec::new();
    for k in 1..=6 {
        let a = ex(k);
        let cfg = ChartConfig::new(
            a.dim(),
            Samples::Seeded {
                seed: DEFAULT_SEED,
                count: 10,
                low: -1.0,
                high: 1.0,
            },
        )
        .unwrap();
        match chart_suite(&LinearBivector::new(&a).unwrap(), &cfg) {
            Ok(w) => worst = worst.max(w),
            Err(e) => errors.push(format!("ex{k}: {e}")),
        }
    }
    let cfg = ChartConfig::new(
        3,
        Samples::Seeded {
            seed: DEFAULT_SEED,
            count: 10,
            low: 0.1,
            high: 2.0,
        },
    )
    .unwrap();
    let accepted = cfg.points().len();
    match inverse_hessian_bivector(Entropy(3), 3, &cfg).map_err(|e| e.to_string()).and_then(|h| chart_suite(&h, &cfg)) {
        Ok(w) => worst = worst.max(w),
        Err(e) => errors.push(format!("entropy: {e}")),
    }
    outcome(
        errors.is_empty() && worst <= 1e-5,
        format!(
            "codazzi, hamilton_equivalence, d_curvature pass on ex1..ex6 and the entropy inverse Hessian ({accepted} samples in (0.1, 2)^3); max cyclic triple-bracket sum {worst:.1e}; errors {errors:?}"
        ),
    )
}

// ------------------------------------------------------------------ 12

fn criterion_12() -> Outcome {
    let a = hessalg(&["catalog", "run", "--seed", "12345"]);
    let b = hessalg(&["catalog", "run", "--seed", "12345"]);
    let same = a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(same, format!("two catalog runs, {} bytes each, identical: {}", a.stdout.len(), a.stdout == b.stdout))
}

/// Criteria that are red for a documented reason, with the sub-clause that
/// fails.
const KNOWN_RED: &[usize] = &[7];

#[test]
fn acceptance() {
    let criteria: [(usize, fn() -> Outcome); 12] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    let mut out = std::io::stdout().lock();
    let mut red = Vec::new();
    for (n, run) in criteria {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        writeln!(
            out,
            "criterion {n}: {} [{secs:.2}s] {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        )
        .unwrap();
        if !o.pass {
            red.push(n);
        }
    }
    let unexpected: Vec<usize> = red.iter().copied().filter(|n| !KNOWN_RED.contains(n)).collect();
    assert!(unexpected.is_empty(), "unexpected red criteria {unexpected:?}");
}

/// The red clause of criterion 7 is the published potential off `t = 1`;
/// every other clause holds.
#[test]
fn criterion_7_is_red_only_on_the_published_potential() {
    let c = criterion_7_parts();
    assert!(c.a4_reported && c.exit_zero && c.codazzi && c.published_t1);
    assert!(!c.published_off_t1.is_empty());
    assert!(c.published_off_t1.iter().all(|(_, ok, _)| !ok));
    assert!(c.variant_worst <= 1e-5);
}
