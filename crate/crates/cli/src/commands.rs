//! Command implementations. Each fills a [`ReportBundle`]; the caller picks
//! the exit code from its checks.

use hessalg::algcore::{
    check_associative, check_commutative, check_left_symmetric, commutator_bracket, jacobi_check,
    power_ideals, subspace_contains, Algebra,
};
use hessalg::chartgeom::{
    codazzi_check, d_curvature_fd, equivalence_agrees, hamilton_equiv_check,
    inverse_hessian_bivector, triple_bracket, BivectorField, ChartConfig, LinearBivector, Samples,
};
use hessalg::hessdual::{
    ambient_metric, codazzi_tensor_check, h_matrix, harmonic_check, hessian_curvature_check,
    koszul_alpha, koszul_beta, koszul_beta_symmetry, koszul_identity, orbit_map, orbit_metric,
    potential_check, run_catalog, special_real_check, CatalogConfig, FdConfig, KnownPotential,
    Potential,
};
use hessalg::phasespace::{
    build_phase_space_r, build_phase_space_r_unchecked, build_triangular, check_quasi_s_matrix,
    para_kahler_verify, xi_check, PhaseSpace, RMatrix,
};
use hessalg::scalar::{format_rational, DEFAULT_TOL};
use hessalg::{CheckReport, Error, Matrix, Rational, Scalar, Status};
use serde_json::{json, Value};

use crate::bundle::ReportBundle;
use crate::input::{self, convert};
use crate::CliError;

/// Settings shared by every command.
pub struct Run {
    pub exact: bool,
    pub seed: u64,
    pub tol: Option<f64>,
}

impl Run {
    pub fn bundle(&self, command: &str) -> ReportBundle {
        ReportBundle::new(command, self.exact, self.seed)
    }

    /// Identity tolerance: zero in exact mode unless overridden.
    fn identity_tol(&self) -> f64 {
        self.tol.unwrap_or(if self.exact { 0.0 } else { DEFAULT_TOL })
    }
}

/// Converts an exact algebra to the working field.
fn working<T: Scalar>(a: &Algebra<Rational>, tol: f64) -> Algebra<T> {
    Algebra::with_tol(a.structure().map(convert::<T>), tol)
}

/// Exact values as strings, floats as numbers.
fn num<T: Scalar>(x: &T) -> Value {
    match (x as &dyn std::any::Any).downcast_ref::<Rational>() {
        Some(q) => Value::String(format_rational(q)),
        None => json!(x.to_f64()),
    }
}

fn vec_json<T: Scalar>(v: &[T]) -> Value {
    Value::Array(v.iter().map(num).collect())
}

fn matrix_json<T: Scalar>(m: &Matrix<T>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vec_json(r)).collect())
}

fn core_error(e: Error) -> CliError {
    match e {
        Error::Input(_) | Error::Json(_) | Error::DimensionMismatch { .. } | Error::Domain { .. } => {
            CliError::Input(e.to_string())
        }
        other => CliError::Compute(other.to_string()),
    }
}

// ---------------------------------------------------------------- algebra

pub const REQUIRABLE: [&str; 4] = ["commutative", "associative", "left_symmetric", "jacobi"];

pub fn algebra_check(run: &Run, path: &str, require: &[String]) -> Result<ReportBundle, CliError> {
    for r in require {
        if !REQUIRABLE.contains(&r.as_str()) {
            return Err(CliError::Input(format!(
                "unknown requirement {r:?}; expected one of {}",
                REQUIRABLE.join(", ")
            )));
        }
    }
    let (a, digest) = input::algebra(path)?;
    let mut b = run.bundle("algebra check");
    b.inputs.push(digest);
    if run.exact {
        algebra_check_in::<Rational>(run, &a, require, &mut b);
    } else {
        algebra_check_in::<f64>(run, &a, require, &mut b);
    }
    Ok(b)
}

fn algebra_check_in<T: Scalar>(run: &Run, a: &Algebra<Rational>, require: &[String], b: &mut ReportBundle) {
    let tol = run.identity_tol();
    let w = working::<T>(a, tol);
    let all = [
        check_commutative(&w),
        check_associative(&w),
        check_left_symmetric(&w),
        jacobi_check(&commutator_bracket(w.structure()), tol),
    ];
    let mut flags = serde_json::Map::new();
    for (name, rep) in REQUIRABLE.iter().zip(&all) {
        flags.insert((*name).into(), json!(rep.passed()));
        if require.iter().any(|r| r == name) {
            let mut rep = rep.clone();
            rep.name = (*name).into();
            b.checks.push(rep);
        }
    }
    let ideals = power_ideals(w.structure(), 4, tol);
    b.data = json!({
        "dim": a.dim(),
        "flags": flags,
        "power_ideal_dims": ideals.iter().map(Vec::len).collect::<Vec<_>>(),
    });
}

pub fn algebra_powers(run: &Run, path: &str, max: usize) -> Result<ReportBundle, CliError> {
    if max == 0 {
        return Err(CliError::Input("--max must be at least 1".into()));
    }
    let (a, digest) = input::algebra(path)?;
    let mut b = run.bundle("algebra powers");
    b.inputs.push(digest);
    if run.exact {
        powers_in::<Rational>(run, &a, max, &mut b);
    } else {
        powers_in::<f64>(run, &a, max, &mut b);
    }
    Ok(b)
}

fn powers_in<T: Scalar>(run: &Run, a: &Algebra<Rational>, max: usize, b: &mut ReportBundle) {
    let tol = run.identity_tol();
    let w = working::<T>(a, tol);
    let ideals = power_ideals(w.structure(), max, tol);
    let nested = ideals.windows(2).all(|p| subspace_contains(&p[0], &p[1], tol));
    b.checks.push(CheckReport::new("powers_nested", Status::from_bool(nested), 0.0));
    b.data = Value::Array(
        ideals
            .iter()
            .enumerate()
            .map(|(k, basis)| {
                json!({
                    "k": k + 1,
                    "dim": basis.len(),
                    "basis": basis.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
                })
            })
            .collect(),
    );
}

// ---------------------------------------------------------------- phase

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum PhaseAction {
    Build,
    Verify,
    Smatrix,
}

impl PhaseAction {
    fn name(self) -> &'static str {
        match self {
            Self::Build => "phase build",
            Self::Verify => "phase verify",
            Self::Smatrix => "phase smatrix",
        }
    }
}

pub fn phase(run: &Run, action: PhaseAction, s_path: &str, r_path: Option<&str>) -> Result<ReportBundle, CliError> {
    let (s, sd) = input::algebra(s_path)?;
    let mut b = run.bundle(action.name());
    b.inputs.push(sd);
    let r = match r_path {
        Some(p) => {
            let (r, rd) = input::rmatrix(p)?;
            b.inputs.push(rd);
            if r.dim() != s.dim() {
                return Err(CliError::Input(format!(
                    "r has dimension {}, the algebra has dimension {}",
                    r.dim(),
                    s.dim()
                )));
            }
            Some(r)
        }
        None if action == PhaseAction::Smatrix => {
            return Err(CliError::Input("phase smatrix needs --r".into()));
        }
        None => None,
    };
    if run.exact {
        phase_in::<Rational>(run, action, &s, r.as_ref(), &mut b)?;
    } else {
        phase_in::<f64>(run, action, &s, r.as_ref(), &mut b)?;
    }
    Ok(b)
}

fn phase_data<T: Scalar>(p: &PhaseSpace<T>) -> Value {
    let m = p.dim();
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let v = p.bracket().basis_bracket(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                brackets.push(json!({"i": i + 1, "j": j + 1, "value": vec_json(v)}));
            }
        }
    }
    json!({
        "dim": m,
        "brackets": brackets,
        "metric": matrix_json(p.metric().matrix()),
        "k": matrix_json(p.k()),
    })
}

fn phase_in<T: Scalar>(
    run: &Run,
    action: PhaseAction,
    s: &Algebra<Rational>,
    r: Option<&RMatrix<Rational>>,
    b: &mut ReportBundle,
) -> Result<(), CliError> {
    let tol = run.identity_tol();
    let w = working::<T>(s, tol);
    let st = w.structure();
    let ls = check_left_symmetric(&w);
    let ok = ls.passed();
    b.checks.push(ls);
    if !ok {
        return Ok(());
    }
    let r = r.map(|r| r.map(convert::<T>));
    if let Some(r) = &r {
        let suite = check_quasi_s_matrix(st, r, tol).map_err(core_error)?;
        b.checks.extend(suite.items);
    }
    if action == PhaseAction::Smatrix {
        return Ok(());
    }
    let built = match (&r, action) {
        (None, _) => build_triangular(st, tol),
        (Some(r), PhaseAction::Build) => build_phase_space_r(st, r, tol),
        (Some(r), _) => build_phase_space_r_unchecked(st, r),
    };
    let p = match built {
        Ok(p) => p,
        Err(Error::Incompatible(why)) => {
            b.checks.push(CheckReport::new("build", Status::Fail, 0.0).with_note(why));
            return Ok(());
        }
        Err(e) => return Err(core_error(e)),
    };
    b.checks.push(
        CheckReport::new("build", Status::Pass, 0.0)
            .with_note(if r.is_some() { "r-deformed bracket" } else { "triangular bracket" }),
    );
    b.data = phase_data(&p);
    if action == PhaseAction::Verify {
        b.checks.extend(para_kahler_verify(&p, tol).items);
        if let Some(r) = &r {
            b.checks.push(xi_check(st, r, tol));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- dual

pub enum DualAction<'a> {
    Orbit { point: &'a str, element: &'a str },
    Metric { point: &'a str },
    Curvature,
    Koszul { element: &'a str, other: Option<&'a str> },
    Potential { kind: KnownPotential, point: &'a str },
}

impl DualAction<'_> {
    fn name(&self) -> &'static str {
        match self {
            Self::Orbit { .. } => "dual orbit",
            Self::Metric { .. } => "dual metric",
            Self::Curvature => "dual curvature",
            Self::Koszul { .. } => "dual koszul",
            Self::Potential { .. } => "dual potential",
        }
    }
}

pub fn dual(run: &Run, path: &str, action: DualAction<'_>) -> Result<ReportBundle, CliError> {
    let (a, digest) = input::algebra(path)?;
    let mut b = run.bundle(action.name());
    b.inputs.push(digest);
    if run.exact {
        dual_in::<Rational>(run, &a, action, &mut b)?;
    } else {
        dual_in::<f64>(run, &a, action, &mut b)?;
    }
    Ok(b)
}

fn dual_in<T: Scalar>(run: &Run, a: &Algebra<Rational>, action: DualAction<'_>, b: &mut ReportBundle) -> Result<(), CliError> {
    let tol = run.identity_tol();
    let w = working::<T>(a, tol);
    let n = w.dim();
    let ca = w.is_commutative_associative();
    b.checks.push(
        CheckReport::new("commutative_associative", Status::from_bool(ca), 0.0)
            .with_note(format!("{:?}", w.flags())),
    );
    if !ca {
        return Ok(());
    }
    match action {
        DualAction::Orbit { point, element } => {
            let mu: Vec<T> = input::vector_in(point, "--point", n)?;
            let u: Vec<T> = input::vector_in(element, "--element", n)?;
            let image = orbit_map(&w, &u, &mu).map_err(core_error)?;
            let g = h_matrix(&w, &mu).map_err(core_error)?;
            b.data = json!({
                "point": vec_json(&mu),
                "element": vec_json(&u),
                "image": vec_json(&image),
                "orbit_dim": g.rank,
            });
        }
        DualAction::Metric { point } => {
            let mu: Vec<T> = input::vector_in(point, "--point", n)?;
            let g = h_matrix(&w, &mu).map_err(core_error)?;
            let om = orbit_metric(&w, &mu).map_err(core_error)?;
            let ambient = if g.rank == n {
                matrix_json(ambient_metric(&w, &mu).map_err(core_error)?.matrix())
            } else {
                Value::Null
            };
            b.data = json!({
                "point": vec_json(&mu),
                "h": matrix_json(&g.h),
                "orbit_dim": g.rank,
                "generators": om.generators,
                "gram": matrix_json(&g.gram),
                "signature": om.signature,
                "ambient_metric": ambient,
            });
        }
        DualAction::Curvature => {
            b.checks.push(hessian_curvature_check(&w, tol));
            b.checks.push(codazzi_tensor_check(&w, tol));
            b.checks.push(special_real_check(&w, tol));
        }
        DualAction::Koszul { element, other } => {
            let u: Vec<T> = input::vector_in(element, "--element", n)?;
            let mut data = json!({"element": vec_json(&u), "alpha": num(&koszul_alpha(&w, &u))});
            if let Some(v) = other {
                let v: Vec<T> = input::vector_in(v, "--other", n)?;
                data["other"] = vec_json(&v);
                data["beta"] = num(&koszul_beta(&w, &u, &v));
            }
            b.data = data;
            b.checks.push(koszul_beta_symmetry(&w, tol));
            b.checks.push(koszul_identity(&w, tol));
        }
        DualAction::Potential { kind, point } => {
            let mu: Vec<f64> = input::vector_in(point, "--point", n)?;
            if kind.dim(n) != n {
                return Err(CliError::Input(format!(
                    "potential {kind:?} lives in dimension {}, the algebra has dimension {n}",
                    kind.dim(n)
                )));
            }
            let fd = FdConfig {
                tol: run.tol.unwrap_or(FdConfig::default().tol),
                ..FdConfig::default()
            };
            let phi = Potential { kind, dim: n };
            b.checks.push(potential_check(&w, &phi, &mu, &fd).map_err(core_error)?);
            if kind == KnownPotential::ComplexLog {
                b.checks.push(harmonic_check(&phi, &mu, &fd).map_err(core_error)?);
            }
            b.data = json!({"potential": kind, "point": mu});
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- chart

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ChartAction {
    Codazzi,
    Triple,
}

pub enum FieldSource<'a> {
    Algebra(&'a str),
    /// Inverse Hessian of `Σ x_i ln x_i` in dimension `n`.
    Entropy(usize),
}

type TestFn<'a> = &'a dyn Fn(&[f64]) -> f64;

fn triple_f(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>() / 2.0
}

fn triple_g(x: &[f64]) -> f64 {
    x.iter().enumerate().map(|(i, v)| ((i + 1) as f64 * v).sin()).sum()
}

fn triple_m(x: &[f64]) -> f64 {
    (x.iter().sum::<f64>() / x.len() as f64).exp()
}

pub fn chart(
    run: &Run,
    action: ChartAction,
    source: FieldSource<'_>,
    samples_path: Option<&str>,
) -> Result<ReportBundle, CliError> {
    let mut b = run.bundle(match action {
        ChartAction::Codazzi => "chart codazzi",
        ChartAction::Triple => "chart triple",
    });
    let mut samples = None;
    if let Some(p) = samples_path {
        let (spec, d) = input::samples(p)?;
        b.inputs.push(d);
        samples = Some(spec.into_samples(run.seed));
    }
    let seeded = |low: f64, high: f64| Samples::Seeded {
        seed: run.seed,
        count: 10,
        low,
        high,
    };
    match source {
        FieldSource::Algebra(path) => {
            let (a, d) = input::algebra(path)?;
            b.inputs.push(d);
            let cfg = ChartConfig::new(a.dim(), samples.take().unwrap_or_else(|| seeded(-1.0, 1.0)))
                .map_err(core_error)?;
            let h = LinearBivector::new(&a).map_err(core_error)?;
            chart_run(run, action, &h, cfg, b)
        }
        FieldSource::Entropy(n) => {
            if n == 0 {
                return Err(CliError::Input("--entropy needs a positive dimension".into()));
            }
            let cfg = ChartConfig::new(n, samples.take().unwrap_or_else(|| seeded(0.1, 2.0)))
                .map_err(core_error)?;
            let f = Potential {
                kind: KnownPotential::EntropyLike,
                dim: n,
            };
            let h = inverse_hessian_bivector(f, n, &cfg).map_err(core_error)?;
            chart_run(run, action, &h, cfg, b)
        }
    }
}

fn chart_run<B: BivectorField + ?Sized>(
    run: &Run,
    action: ChartAction,
    h: &B,
    mut cfg: ChartConfig,
    mut b: ReportBundle,
) -> Result<ReportBundle, CliError> {
    if let Some(t) = run.tol {
        cfg = cfg.with_tol(t).map_err(core_error)?;
    }
    match action {
        ChartAction::Codazzi => {
            let c = codazzi_check(h, &cfg).map_err(core_error)?;
            let ham = hamilton_equiv_check(h, &cfg).map_err(core_error)?;
            let agree = equivalence_agrees(&c, &ham);
            let curv = d_curvature_fd(h, &cfg).map_err(core_error)?;
            b.checks.extend([c, ham, curv, agree]);
        }
        ChartAction::Triple => {
            let points: Vec<Vec<f64>> = cfg.points().into_iter().filter(|x| h.accepts(x)).collect();
            let (mut cyclic, mut anti) = (0.0f64, 0.0f64);
            let (mut worst_c, mut worst_a) = (None, None);
            let (f, g, m): (TestFn, TestFn, TestFn) = (&triple_f, &triple_g, &triple_m);
            for (s, x) in points.iter().enumerate() {
                let tb = |a: TestFn, bb: TestFn, c: TestFn| {
                    triple_bracket(h, a, bb, c, x, &cfg.steps).map_err(core_error)
                };
                let fgm = tb(f, g, m)?;
                let sum = fgm + tb(g, m, f)? + tb(m, f, g)?;
                let swap = fgm + tb(g, f, m)?;
                if sum.abs() > cyclic || worst_c.is_none() {
                    cyclic = cyclic.max(sum.abs());
                    worst_c = Some(s + 1);
                }
                if swap.abs() > anti || worst_a.is_none() {
                    anti = anti.max(swap.abs());
                    worst_a = Some(s + 1);
                }
            }
            if points.is_empty() {
                b.checks.push(CheckReport::vacuous("triple_cyclic", "no accepted samples"));
                b.checks.push(CheckReport::vacuous("triple_antisymmetry", "no accepted samples"));
            } else {
                let note = |w: Option<usize>| format!("{} samples; worst at sample {}", points.len(), w.unwrap_or(1));
                b.checks.push(
                    CheckReport::new("triple_cyclic", Status::from_bool(cyclic <= cfg.tol), cyclic)
                        .with_note(note(worst_c)),
                );
                b.checks.push(
                    CheckReport::new("triple_antisymmetry", Status::from_bool(anti <= cfg.tol), anti)
                        .with_note(note(worst_a)),
                );
            }
        }
    }
    b.data = json!({"dim": cfg.dim, "tol": cfg.tol, "curvature_tol": cfg.curvature_tol});
    Ok(b)
}

// ---------------------------------------------------------------- catalog

pub fn catalog(run: &Run) -> ReportBundle {
    let mut b = run.bundle("catalog run");
    let mut cfg = CatalogConfig {
        seed: run.seed,
        ..CatalogConfig::default()
    };
    if let Some(t) = run.tol {
        cfg.fd.tol = t;
    }
    let entries = run_catalog(&cfg);
    for e in &entries {
        for c in &e.checks {
            let mut c = c.clone();
            c.name = format!("example {}: {}", e.example, c.name);
            b.checks.push(c);
        }
        b.discrepancies.extend(e.discrepancies.iter().cloned());
    }
    b.entries = entries;
    b
}
