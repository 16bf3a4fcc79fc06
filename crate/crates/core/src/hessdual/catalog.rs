//! The six worked examples with their published claims, re-verified at run
//! time.
//!
//! Claims are data: a claim that does not match the computation produces a
//! discrepancy string, never a failed check. Checks are the tool's own
//! consistency tests and must pass on every entry.

use log::info;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algcore::{check_associative, check_commutative, power_ideal, Algebra, Signature};
use crate::linalg::unit;
use crate::report::{CheckReport, Status};
use crate::scalar::Rational;

use super::algebras::{example_algebra, DIAGONAL_DIM};
use super::gram::{fundamental_vector, h_matrix, orbit_map, orbit_sample};
use super::invariants::{
    codazzi_tensor_check, connection_table, hessian_curvature_check, koszul_beta_symmetry,
    koszul_identity, special_real_check,
};
use super::potential::{harmonic_check, potential_check, FdConfig, KnownPotential, Potential};

/// `(u, μ) ↦ Φ(u, μ)`.
pub type OrbitFormula = fn(&[f64], &[f64]) -> Vec<f64>;
/// `μ ↦ [X_{e_1}(μ), …, X_{e_n}(μ)]`.
pub type FieldFormula = fn(&[f64]) -> Vec<Vec<f64>>;
/// `μ ↦` a symmetric matrix.
pub type MetricFormula = fn(&[f64]) -> Vec<Vec<f64>>;

/// A published statement about an example.
#[derive(Debug, Clone)]
pub enum Claim {
    OrbitFormula(OrbitFormula),
    FundamentalFields(FieldFormula),
    /// `A^k = 0` (`zero`) or `A^k ≠ 0`.
    PowerIdeal { k: usize, zero: bool },
    SpecialReal(bool),
    FlatMetric,
    Harmonic,
    /// Gram matrix on the pivot generators of orbit `orbit`.
    GeneratorMetric { orbit: usize, formula: MetricFormula },
    /// Metric in the linear coordinates of the orbit, i.e. `G_I^{-1}`.
    CoordinateMetric { orbit: usize, formula: MetricFormula },
}

/// An orbit through `base` with its published dimension and signature.
#[derive(Debug, Clone)]
pub struct OrbitSpec {
    pub label: &'static str,
    pub base: Vec<f64>,
    pub dim: usize,
    pub signature: Option<Signature>,
    pub potential: Option<KnownPotential>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub index: usize,
    pub title: &'static str,
    pub algebra: Algebra<Rational>,
    pub orbits: Vec<OrbitSpec>,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fact {
    pub name: String,
    pub source: &'static str,
    pub claimed: String,
    pub computed: String,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryReport {
    pub example: usize,
    pub title: String,
    pub checks: Vec<CheckReport>,
    /// Properties of the example whose failure is not a tool failure.
    pub properties: Vec<CheckReport>,
    pub facts: Vec<Fact>,
    pub discrepancies: Vec<String>,
}

impl EntryReport {
    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status.is_failure())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogConfig {
    pub seed: u64,
    /// Accepted samples per orbit.
    pub samples: usize,
    pub fd: FdConfig,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        Self {
            seed: super::gram::DEFAULT_SEED,
            samples: 10,
            fd: FdConfig::default(),
        }
    }
}

fn orbit(
    label: &'static str,
    base: &[f64],
    dim: usize,
    signature: Option<(usize, usize, usize)>,
    potential: Option<KnownPotential>,
) -> OrbitSpec {
    OrbitSpec {
        label,
        base: base.to_vec(),
        dim,
        signature: signature.map(|(p, q, z)| Signature::new(p, q, z)),
        potential,
    }
}

fn diagonal_orbit(u: &[f64], m: &[f64]) -> Vec<f64> {
    u.iter().zip(m).map(|(a, x)| a.exp() * x).collect()
}

fn diagonal_fields(m: &[f64]) -> Vec<Vec<f64>> {
    (0..m.len())
        .map(|i| {
            let mut c = vec![0.0; m.len()];
            c[i] = m[i];
            c
        })
        .collect()
}

fn complex_orbit(u: &[f64], m: &[f64]) -> Vec<f64> {
    let (x, y, a, b) = (u[0], u[1], m[0], m[1]);
    let s = x.exp();
    vec![s * (a * y.cos() + b * y.sin()), s * (-a * y.sin() + b * y.cos())]
}

fn complex_fields(m: &[f64]) -> Vec<Vec<f64>> {
    vec![vec![m[0], m[1]], vec![m[1], -m[0]]]
}

fn complex_metric(m: &[f64]) -> Vec<Vec<f64>> {
    let (a, b) = (m[0], m[1]);
    let r = a * a + b * b;
    vec![vec![a / r, b / r], vec![b / r, -a / r]]
}

fn cubic_orbit(u: &[f64], m: &[f64]) -> Vec<f64> {
    let (a, b) = (u[0], u[1]);
    let (x, y, z) = (m[0], m[1], m[2]);
    vec![x + a * y + (0.5 * a * a + b) * z, y + a * z, z]
}

fn cubic_fields(m: &[f64]) -> Vec<Vec<f64>> {
    let (y, z) = (m[1], m[2]);
    vec![vec![y, z, 0.0], vec![z, 0.0, 0.0], vec![0.0; 3]]
}

fn cubic_plane_metric(m: &[f64]) -> Vec<Vec<f64>> {
    let (y, c) = (m[1], m[2]);
    vec![vec![y, c], vec![c, 0.0]]
}

fn unital_three_orbit(u: &[f64], m: &[f64]) -> Vec<f64> {
    let (a, b, c) = (u[0], u[1], u[2]);
    let (x, y, z) = (m[0], m[1], m[2]);
    let s = c.exp();
    vec![s * (x + a * y), s * y, s * (a * x + 0.5 * (a * a + 2.0 * b) * y + z)]
}

fn unital_three_fields(m: &[f64]) -> Vec<Vec<f64>> {
    let (x, y, z) = (m[0], m[1], m[2]);
    vec![vec![y, 0.0, x], vec![0.0, 0.0, y], vec![x, y, z]]
}

fn unital_three_metric(m: &[f64]) -> Vec<Vec<f64>> {
    let (x, y, z) = (m[0], m[1], m[2]);
    let rows = [
        [1.0, -x / y, 0.0],
        [-x / y, (x * x - y * z) / y, 1.0],
        [0.0, 1.0, 0.0],
    ];
    rows.iter().map(|r| r.iter().map(|v| v / y).collect()).collect()
}

fn quartic_orbit(u: &[f64], m: &[f64]) -> Vec<f64> {
    let (a, b, c) = (u[0], u[1], u[2]);
    let (x, y, z, t) = (m[0], m[1], m[2], m[3]);
    let q2 = 0.5 * a * a + b;
    vec![
        x + a * y + q2 * z + (a * a * a / 6.0 + a * b + c) * t,
        y + a * z + q2 * t,
        z + a * t,
        t,
    ]
}

fn quartic_fields(m: &[f64]) -> Vec<Vec<f64>> {
    let (y, z, t) = (m[1], m[2], m[3]);
    vec![
        vec![y, z, t, 0.0],
        vec![z, t, 0.0, 0.0],
        vec![t, 0.0, 0.0, 0.0],
        vec![0.0; 4],
    ]
}

fn quartic_metric(m: &[f64]) -> Vec<Vec<f64>> {
    let (y, z, c) = (m[1], m[2], m[3]);
    let rows = [
        [0.0, 0.0, 1.0],
        [0.0, 1.0, -z / c],
        [1.0, -z / c, (z * z - y * c) / (c * c)],
    ];
    rows.iter().map(|r| r.iter().map(|v| v / c).collect()).collect()
}

fn unital_four_fields(m: &[f64]) -> Vec<Vec<f64>> {
    let (x, y, z, t) = (m[0], m[1], m[2], m[3]);
    vec![
        vec![x, y, z, t],
        vec![y, z, t, 0.0],
        vec![z, t, 0.0, 0.0],
        vec![t, 0.0, 0.0, 0.0],
    ]
}

fn unital_four_metric(m: &[f64]) -> Vec<Vec<f64>> {
    let (x, y, z, t) = (m[0], m[1], m[2], m[3]);
    let zt = (z * z - y * t) / (t * t);
    let tt = (2.0 * z * y * t - x * t * t - z * z * z) / (t * t * t);
    let rows = [
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, -z / t],
        [0.0, 1.0, -z / t, zt],
        [1.0, -z / t, zt, tt],
    ];
    rows.iter().map(|r| r.iter().map(|v| v / t).collect()).collect()
}

/// The six built-in examples.
pub fn catalog() -> Vec<CatalogEntry> {
    use KnownPotential::*;
    let alg = |i| example_algebra::<Rational>(i).expect("built-in example");
    vec![
        CatalogEntry {
            index: 1,
            title: "product of copies of R",
            algebra: alg(1),
            orbits: vec![
                orbit("all coordinates nonzero", &[1.0, -2.0, 3.0], DIAGONAL_DIM, Some((2, 1, 0)), Some(EntropyLike)),
                orbit("one coordinate zero", &[1.0, 0.0, -2.0], 2, Some((1, 1, 0)), None),
            ],
            claims: vec![
                Claim::OrbitFormula(diagonal_orbit),
                Claim::FundamentalFields(diagonal_fields),
            ],
        },
        CatalogEntry {
            index: 2,
            title: "complex numbers",
            algebra: alg(2),
            orbits: vec![
                orbit("complement of the origin", &[1.0, 2.0], 2, Some((1, 1, 0)), Some(ComplexLog)),
                orbit("origin", &[0.0, 0.0], 0, None, None),
            ],
            claims: vec![
                Claim::OrbitFormula(complex_orbit),
                Claim::FundamentalFields(complex_fields),
                Claim::CoordinateMetric { orbit: 0, formula: complex_metric },
                Claim::FlatMetric,
                Claim::Harmonic,
            ],
        },
        CatalogEntry {
            index: 3,
            title: "e1e1=e2, e1e2=e3",
            algebra: alg(3),
            orbits: vec![
                orbit("plane z=2", &[0.0, 0.0, 2.0], 2, Some((1, 1, 0)), Some(CubicNilpotent)),
                orbit("line z=0, y=2", &[0.0, 2.0, 0.0], 1, Some((1, 0, 0)), Some(CubicLine)),
                orbit("point (c,0,0)", &[1.0, 0.0, 0.0], 0, None, None),
            ],
            claims: vec![
                Claim::OrbitFormula(cubic_orbit),
                Claim::FundamentalFields(cubic_fields),
                Claim::PowerIdeal { k: 3, zero: false },
                Claim::PowerIdeal { k: 4, zero: true },
                Claim::SpecialReal(true),
                Claim::GeneratorMetric { orbit: 0, formula: cubic_plane_metric },
            ],
        },
        CatalogEntry {
            index: 4,
            title: "e1e1=e2, e3 unit",
            algebra: alg(4),
            orbits: vec![
                orbit("y>0", &[1.0, 2.0, 3.0], 3, Some((2, 1, 0)), Some(UnitalThree)),
                orbit("y<0", &[1.0, -2.0, 3.0], 3, Some((1, 2, 0)), Some(UnitalThree)),
                orbit("y=0, x>0", &[1.0, 0.0, 0.0], 2, None, None),
                orbit("y=0, x<0", &[-1.0, 0.0, 0.0], 2, None, None),
                orbit("y=x=0, z>0", &[0.0, 0.0, 1.0], 1, None, None),
                orbit("y=x=0, z<0", &[0.0, 0.0, -1.0], 1, None, None),
                orbit("origin", &[0.0, 0.0, 0.0], 0, None, None),
            ],
            claims: vec![
                Claim::OrbitFormula(unital_three_orbit),
                Claim::FundamentalFields(unital_three_fields),
                Claim::CoordinateMetric { orbit: 0, formula: unital_three_metric },
                Claim::CoordinateMetric { orbit: 1, formula: unital_three_metric },
            ],
        },
        CatalogEntry {
            index: 5,
            title: "e1e1=e2, e1e2=e3, e1e3=e2e2=e4",
            algebra: alg(5),
            orbits: vec![
                orbit("hyperplane t=1", &[0.0, 0.0, 0.0, 1.0], 3, Some((2, 1, 0)), Some(QuarticNilpotent)),
                orbit("hyperplane t=2", &[0.0, 0.0, 0.0, 2.0], 3, Some((2, 1, 0)), Some(QuarticNilpotent)),
                orbit("hyperplane t=-1", &[0.0, 0.0, 0.0, -1.0], 3, Some((1, 2, 0)), Some(QuarticNilpotent)),
            ],
            claims: vec![
                Claim::OrbitFormula(quartic_orbit),
                Claim::FundamentalFields(quartic_fields),
                Claim::PowerIdeal { k: 3, zero: false },
                Claim::PowerIdeal { k: 4, zero: true },
                Claim::SpecialReal(true),
                Claim::CoordinateMetric { orbit: 0, formula: quartic_metric },
                Claim::CoordinateMetric { orbit: 1, formula: quartic_metric },
                Claim::CoordinateMetric { orbit: 2, formula: quartic_metric },
            ],
        },
        CatalogEntry {
            index: 6,
            title: "e1 unit, e2e2=e3, e2e3=e4",
            algebra: alg(6),
            orbits: vec![
                orbit("t>0", &[1.0, 1.0, 1.0, 1.0], 4, Some((2, 2, 0)), Some(UnitalFour)),
                orbit("t<0", &[1.0, 1.0, 1.0, -1.0], 4, Some((2, 2, 0)), Some(UnitalFour)),
            ],
            claims: vec![
                Claim::FundamentalFields(unital_four_fields),
                Claim::CoordinateMetric { orbit: 0, formula: unital_four_metric },
                Claim::CoordinateMetric { orbit: 1, formula: unital_four_metric },
            ],
        },
    ]
}

const FORMULA_TOL: f64 = 1e-9;

fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = 1.0 + b.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
        / scale
}

fn matrix_rel_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let fa: Vec<f64> = a.iter().flatten().copied().collect();
    let fb: Vec<f64> = b.iter().flatten().copied().collect();
    if fa.len() != fb.len() {
        return f64::INFINITY;
    }
    rel_diff(&fa, &fb)
}

/// Summarises per-sample defects into one line.
struct Aggregate {
    name: String,
    worst: f64,
    failures: usize,
    total: usize,
    tol: f64,
    witness: Option<Vec<usize>>,
}

impl Aggregate {
    fn new(name: impl Into<String>, tol: f64) -> Self {
        Self {
            name: name.into(),
            worst: 0.0,
            failures: 0,
            total: 0,
            tol,
            witness: None,
        }
    }

    fn record(&mut self, defect: f64, sample: usize) {
        self.total += 1;
        if defect.is_nan() || defect > self.tol {
            self.failures += 1;
        }
        if defect.is_nan() || defect > self.worst {
            self.worst = defect;
            self.witness = Some(vec![sample + 1]);
        }
    }

    fn report(self) -> CheckReport {
        let ok = self.failures == 0 && self.total > 0;
        let note = format!("{} samples, {} above tolerance", self.total, self.failures);
        let mut r = CheckReport::new(self.name, Status::from_bool(ok), self.worst).with_note(note);
        if !ok {
            r.witness = self.witness;
        }
        r
    }
}

struct Runner<'a> {
    entry: &'a CatalogEntry,
    cfg: &'a CatalogConfig,
    exact: &'a Algebra<Rational>,
    float: Algebra<f64>,
    checks: Vec<CheckReport>,
    properties: Vec<CheckReport>,
    facts: Vec<Fact>,
    /// Accepted samples per orbit.
    samples: Vec<Vec<Vec<f64>>>,
}

impl Runner<'_> {
    fn fact(&mut self, name: impl Into<String>, claimed: impl Into<String>, computed: impl Into<String>, agrees: bool) {
        self.facts.push(Fact {
            name: name.into(),
            source: "published",
            claimed: claimed.into(),
            computed: computed.into(),
            agrees,
        });
    }

    fn seed(&self, salt: u64) -> u64 {
        self.cfg
            .seed
            .wrapping_add((self.entry.index as u64) << 32)
            .wrapping_add(salt)
    }

    fn algebraic_checks(&mut self) {
        let a = self.exact;
        self.checks.push(check_commutative(a));
        self.checks.push(check_associative(a));
        self.checks.push(codazzi_tensor_check(a, 0.0));
        self.checks.push(connection_table(a, 0.0).flatness);
        self.checks.push(koszul_beta_symmetry(a, 0.0));
        self.checks.push(koszul_identity(a, 0.0));
        let sr = special_real_check(a, 0.0);
        let q = hessian_curvature_check(a, 0.0);
        let a4 = power_ideal(a.structure(), 4, 0.0).len();
        let agree = sr.passed() == q.passed() && q.passed() == (a4 == 0);
        self.checks.push(
            CheckReport::new("special_real_consistency", Status::from_bool(agree), 0.0).with_note(format!(
                "special_real={:?} hessian_curvature_zero={:?} dim A^4={a4}",
                sr.status, q.status
            )),
        );
        self.properties.push(sr);
        self.properties.push(q);
    }

    fn collect_samples(&mut self) {
        for (k, o) in self.entry.orbits.iter().enumerate() {
            let target = self.cfg.samples;
            let mut accepted = Vec::new();
            let mut rejected = 0;
            let rank = h_matrix(&self.float, &o.base).map(|g| g.rank).unwrap_or(0);
            let candidates =
                orbit_sample(&self.float, &o.base, 5 * target, self.seed(k as u64)).unwrap_or_default();
            for p in candidates {
                if accepted.len() == target {
                    break;
                }
                let guard_ok = o.potential.is_none_or(|kind| kind.admissible(&p));
                let rank_ok = h_matrix(&self.float, &p).map(|g| g.rank == rank).unwrap_or(false);
                if guard_ok && rank_ok {
                    accepted.push(p);
                } else {
                    rejected += 1;
                    info!(
                        "example {} orbit {:?}: rejected sample {:?} (guard {guard_ok}, rank {rank_ok})",
                        self.entry.index, o.label, p
                    );
                }
            }
            if rejected > 0 {
                info!("example {} orbit {:?}: {rejected} samples rejected", self.entry.index, o.label);
            }
            self.samples.push(accepted);
        }
    }

    fn orbit_checks(&mut self) {
        let n = self.float.dim();
        let mut rank_inv = Aggregate::new("orbit_rank_invariance", 0.0);
        let mut gram = Aggregate::new("gram_consistency", 1e-9);
        let mut action = Aggregate::new("action_law", 1e-9);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed(1000));
        let mut counter = 0;
        for (o, pts) in self.entry.orbits.iter().zip(self.samples.clone()) {
            let base_rank = h_matrix(&self.float, &o.base).map(|g| g.rank).unwrap_or(usize::MAX);
            for p in pts.iter().chain(std::iter::once(&o.base)) {
                let g = match h_matrix(&self.float, p) {
                    Ok(g) => g,
                    Err(_) => {
                        gram.record(f64::NAN, counter);
                        continue;
                    }
                };
                rank_inv.record(if g.rank == base_rank { 0.0 } else { 1.0 }, counter);
                let mut d = 0.0f64;
                for i in 0..n {
                    let x = fundamental_vector(&self.float, &unit(n, i), p).expect("dimensions agree");
                    d = d.max(rel_diff(&g.h.column(i), &x));
                }
                if g.rank == n {
                    if let Ok(inv) = g.h.inverse(g.h.zero_threshold()) {
                        let back = g.h.transpose().matmul(&inv).matmul(&g.h);
                        d = d.max(matrix_rel_diff(&back.to_rows(), &g.h.to_rows()));
                    }
                }
                gram.record(d, counter);
                let u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
                let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
                let uv: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
                let lhs = orbit_map(&self.float, &uv, p).expect("dimensions agree");
                let inner = orbit_map(&self.float, &v, p).expect("dimensions agree");
                let rhs = orbit_map(&self.float, &u, &inner).expect("dimensions agree");
                action.record(rel_diff(&lhs, &rhs), counter);
                counter += 1;
            }
        }
        self.checks.push(rank_inv.report());
        self.checks.push(gram.report());
        self.checks.push(action.report());
    }

    /// The published potentials are claims: each orbit yields a property
    /// line with the finite-difference comparison and a fact.
    fn potential_facts(&mut self) {
        let n = self.float.dim();
        for (o, pts) in self.entry.orbits.iter().zip(self.samples.clone()) {
            let Some(kind) = o.potential else { continue };
            let phi = Potential { kind, dim: n };
            let mut agg = Aggregate::new(format!("potential [{}]", o.label), self.cfg.fd.tol);
            for (s, p) in pts.iter().enumerate() {
                match potential_check(&self.float, &phi, p, &self.cfg.fd) {
                    Ok(r) => agg.record(r.defect, s),
                    Err(e) => {
                        info!("example {} potential at {:?}: {e}", self.entry.index, p);
                        agg.record(f64::NAN, s);
                    }
                }
            }
            let report = agg.report();
            self.fact(
                format!("potential [{}]", o.label),
                "restricted Hessian equals the orbit metric",
                format!("max relative error {:.3e}", report.defect),
                report.passed(),
            );
            self.properties.push(report);
        }
    }

    fn orbit_facts(&mut self) {
        for o in &self.entry.orbits {
            let g = h_matrix(&self.float, &o.base);
            let (rank, sig) = match &g {
                Ok(g) => (g.rank, Some(g.signature)),
                Err(_) => (usize::MAX, None),
            };
            self.fact(
                format!("orbit dimension [{}]", o.label),
                o.dim.to_string(),
                rank.to_string(),
                rank == o.dim,
            );
            if let Some(want) = o.signature {
                let got = sig.map(|s| s.to_string()).unwrap_or_else(|| "error".into());
                self.fact(
                    format!("orbit signature [{}]", o.label),
                    want.to_string(),
                    got,
                    sig == Some(want),
                );
            }
        }
    }

    fn claim_facts(&mut self) {
        let n = self.float.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed(2000));
        let random_points: Vec<(Vec<f64>, Vec<f64>)> = (0..self.cfg.samples)
            .map(|_| {
                let u = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
                let m = (0..n).map(|_| rng.random_range(-2.0..=2.0)).collect();
                (u, m)
            })
            .collect();
        for claim in self.entry.claims.clone() {
            match claim {
                Claim::OrbitFormula(f) => {
                    let worst = random_points.iter().fold(0.0f64, |w, (u, m)| {
                        let got = orbit_map(&self.float, u, m).expect("dimensions agree");
                        w.max(rel_diff(&got, &f(u, m)))
                    });
                    self.fact("orbit map closed form", "exact", format!("max relative deviation {worst:.3e}"), worst <= FORMULA_TOL);
                }
                Claim::FundamentalFields(f) => {
                    let worst = random_points.iter().fold(0.0f64, |w, (_, m)| {
                        let want = f(m);
                        (0..n).fold(w, |w, i| {
                            let got = fundamental_vector(&self.float, &unit(n, i), m).expect("dimensions agree");
                            w.max(rel_diff(&got, &want[i]))
                        })
                    });
                    self.fact(
                        "fundamental vector fields",
                        "exact",
                        format!("max relative deviation {worst:.3e}"),
                        worst <= FORMULA_TOL,
                    );
                }
                Claim::PowerIdeal { k, zero } => {
                    let d = power_ideal(self.exact.structure(), k, 0.0).len();
                    let claimed = if zero { format!("A^{k} = 0") } else { format!("A^{k} != 0") };
                    let computed = if d == 0 { format!("A^{k} = 0") } else { format!("dim A^{k} = {d}") };
                    self.fact(format!("power ideal A^{k}"), claimed, computed, (d == 0) == zero);
                }
                Claim::SpecialReal(claimed) => {
                    let got = special_real_check(self.exact, 0.0).passed();
                    self.fact("special real", claimed.to_string(), got.to_string(), got == claimed);
                }
                Claim::FlatMetric => {
                    let ok = connection_table(self.exact, 0.0).flatness.passed();
                    self.fact("metric is flat", "true", ok.to_string(), ok);
                }
                Claim::Harmonic => {
                    let phi = Potential {
                        kind: KnownPotential::ComplexLog,
                        dim: n,
                    };
                    let cfg = FdConfig {
                        tol: 1e-6,
                        ..self.cfg.fd
                    };
                    let pts = self.samples[0].clone();
                    let mut worst = 0.0f64;
                    let mut ok = !pts.is_empty();
                    for p in &pts {
                        match harmonic_check(&phi, p, &cfg) {
                            Ok(r) => {
                                worst = worst.max(r.defect);
                                ok &= r.passed();
                            }
                            Err(_) => ok = false,
                        }
                    }
                    self.fact(
                        "potential is harmonic",
                        "true",
                        format!("max |laplacian| {worst:.3e} over {} samples", pts.len()),
                        ok,
                    );
                }
                Claim::GeneratorMetric { orbit, formula } | Claim::CoordinateMetric { orbit, formula } => {
                    let coordinates = matches!(claim, Claim::CoordinateMetric { .. });
                    let o = &self.entry.orbits[orbit];
                    let pts = self.samples[orbit].clone();
                    let mut worst = 0.0f64;
                    for p in &pts {
                        let g = h_matrix(&self.float, p).expect("dimensions agree");
                        let m = if coordinates {
                            match g.gram.inverse(g.gram.zero_threshold()) {
                                Ok(inv) => inv,
                                Err(_) => {
                                    worst = f64::INFINITY;
                                    continue;
                                }
                            }
                        } else {
                            g.gram.clone()
                        };
                        worst = worst.max(matrix_rel_diff(&m.to_rows(), &formula(p)));
                    }
                    let what = if coordinates { "coordinates" } else { "generators" };
                    self.fact(
                        format!("metric in {what} [{}]", o.label),
                        "closed form",
                        format!("max relative deviation {worst:.3e} over {} samples", pts.len()),
                        !pts.is_empty() && worst <= FORMULA_TOL,
                    );
                }
            }
        }
    }
}

/// Runs one example end to end.
pub fn run_entry(entry: &CatalogEntry, cfg: &CatalogConfig) -> EntryReport {
    let mut r = Runner {
        entry,
        cfg,
        exact: &entry.algebra,
        float: entry.algebra.to_f64(),
        checks: Vec::new(),
        properties: Vec::new(),
        facts: Vec::new(),
        samples: Vec::new(),
    };
    r.algebraic_checks();
    r.collect_samples();
    r.orbit_checks();
    r.potential_facts();
    r.orbit_facts();
    r.claim_facts();
    let discrepancies = r
        .facts
        .iter()
        .filter(|f| !f.agrees)
        .map(|f| {
            format!(
                "DISCREPANCY example {}: {}: published {}, computed {}",
                entry.index, f.name, f.claimed, f.computed
            )
        })
        .collect();
    EntryReport {
        example: entry.index,
        title: entry.title.to_string(),
        checks: r.checks,
        properties: r.properties,
        facts: r.facts,
        discrepancies,
    }
}

/// Runs every example in index order.
pub fn run_catalog(cfg: &CatalogConfig) -> Vec<EntryReport> {
    catalog().iter().map(|e| run_entry(e, cfg)).collect()
}
