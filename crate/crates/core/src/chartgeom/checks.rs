//! Codazzi, Hamiltonian and curvature checks on a flat chart. The chart
//! connection is the canonical one, so covariant derivatives are plain
//! directional derivatives.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::report::{CheckReport, Defect, Status};

use super::field::{check_dim, BivectorField};

/// Central-difference steps, scaled by `1 + |x|∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdSteps {
    pub first: f64,
    pub second: f64,
}

impl Default for FdSteps {
    fn default() -> Self {
        Self {
            first: 1e-5,
            second: 1e-4,
        }
    }
}

/// Where a check evaluates.
#[derive(Debug, Clone, PartialEq)]
pub enum Samples {
    Points(Vec<Vec<f64>>),
    /// Uniform in the box `[low, high]^n`.
    Seeded { seed: u64, count: usize, low: f64, high: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartConfig {
    pub dim: usize,
    pub samples: Samples,
    pub steps: FdSteps,
    pub tol: f64,
    pub curvature_tol: f64,
}

impl ChartConfig {
    pub fn new(dim: usize, samples: Samples) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("chart dimension must be at least 1".into()));
        }
        if let Samples::Points(ps) = &samples {
            for p in ps {
                check_dim(dim, p)?;
            }
        }
        if let Samples::Seeded { low, high, .. } = samples {
            if !(low < high) {
                return Err(Error::Input(format!("empty sampling box [{low}, {high}]")));
            }
        }
        Ok(Self {
            dim,
            samples,
            steps: FdSteps::default(),
            tol: 1e-5,
            curvature_tol: 1e-4,
        })
    }

    pub fn with_steps(mut self, steps: FdSteps) -> Result<Self> {
        if !(steps.first > 0.0 && steps.second > 0.0) {
            return Err(Error::Input("finite-difference steps must be positive".into()));
        }
        self.steps = steps;
        Ok(self)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::Input("tolerance must be positive".into()));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        match &self.samples {
            Samples::Points(ps) => ps.clone(),
            Samples::Seeded { seed, count, low, high } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|_| (0..self.dim).map(|_| rng.random_range(*low..=*high)).collect())
                    .collect()
            }
        }
    }
}

/// Sample specification as read from JSON:
/// `{"points": [[...]], "seed": int?, "count": int?}`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSpec {
    #[serde(default)]
    pub points: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(default)]
    pub low: Option<f64>,
    #[serde(default)]
    pub high: Option<f64>,
}

impl SampleSpec {
    /// Explicit points win; otherwise `count` (default 10) seeded samples in
    /// `[low, high]^n` (default `[-1, 1]`).
    pub fn into_samples(self, default_seed: u64) -> Samples {
        match self.points {
            Some(p) => Samples::Points(p),
            None => Samples::Seeded {
                seed: self.seed.unwrap_or(default_seed),
                count: self.count.unwrap_or(10),
                low: self.low.unwrap_or(-1.0),
                high: self.high.unwrap_or(1.0),
            },
        }
    }
}

fn inf_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

fn shifted(x: &[f64], v: &[f64], s: f64) -> Vec<f64> {
    x.iter().zip(v).map(|(a, b)| a + s * b).collect()
}

/// Central difference of a vector-valued map along `v`.
fn fd_along<F>(x: &[f64], v: &[f64], step: f64, f: F) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let nv = inf_norm(v);
    if nv == 0.0 {
        return Ok(vec![0.0; f(x)?.len()]);
    }
    let s = step * (1.0 + inf_norm(x)) / nv;
    let (p, m) = (f(&shifted(x, v, s))?, f(&shifted(x, v, -s))?);
    Ok(p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * s)).collect())
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    crate::linalg::unit(n, i)
}

fn fd_gradient<F: Fn(&[f64]) -> f64 + ?Sized>(f: &F, x: &[f64], step: f64) -> Vec<f64> {
    let s = step * (1.0 + inf_norm(x));
    (0..x.len())
        .map(|i| {
            let e = unit(x.len(), i);
            (f(&shifted(x, &e, s)) - f(&shifted(x, &e, -s))) / (2.0 * s)
        })
        .collect()
}

fn eval_symmetric<B: BivectorField + ?Sized>(h: &B, x: &[f64], tol: f64) -> Result<Matrix<f64>> {
    let m = h.eval(x)?;
    let scale = tol * (1.0 + m.max_abs());
    if let Some((i, j)) = m.asymmetry(scale) {
        return Err(Error::NotSymmetric { i: i + 1, j: j + 1 });
    }
    Ok(m)
}

/// `D_v H(x)`, exact when the field provides it.
fn directional<B: BivectorField + ?Sized>(h: &B, x: &[f64], v: &[f64], step: f64) -> Result<Matrix<f64>> {
    if let Some(d) = h.derivative(x, v) {
        return d;
    }
    let n = h.dim();
    let flat = fd_along(x, v, step, |y| Ok(h.eval(y)?.entries().to_vec()))?;
    Ok(Matrix::from_fn(n, n, |i, j| flat[i * n + j]))
}

fn accepted<B: BivectorField + ?Sized>(h: &B, cfg: &ChartConfig, what: &str) -> Result<Vec<Vec<f64>>> {
    if cfg.dim != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: cfg.dim,
        });
    }
    let all = cfg.points();
    let kept: Vec<Vec<f64>> = all.iter().filter(|x| h.accepts(x)).cloned().collect();
    if kept.len() < all.len() {
        log::info!("{what}: rejected {} of {} samples", all.len() - kept.len(), all.len());
    }
    Ok(kept)
}

fn finish(name: &str, d: &Defect<f64>, worst_sample: Option<usize>, kept: usize, tol: f64) -> CheckReport {
    if kept == 0 {
        return CheckReport::vacuous(name, "no accepted samples");
    }
    let mut r = CheckReport::from_defect(name, d, tol);
    let mut note = format!("{kept} samples");
    if let (false, Some(s)) = (r.passed(), worst_sample) {
        note.push_str(&format!("; worst at sample {}", s + 1));
    }
    r.note = Some(note);
    r
}

/// `∇_{h#(e_i*)} h(e_j*, e_k*) − ∇_{h#(e_j*)} h(e_i*, e_k*)` over dual-basis
/// triples at every accepted sample. The witness is the worst `(i, j, k)`.
pub fn codazzi_check<B: BivectorField + ?Sized>(h: &B, cfg: &ChartConfig) -> Result<CheckReport> {
    let n = h.dim();
    let points = accepted(h, cfg, "codazzi")?;
    let mut worst = Defect::new();
    let mut at = None;
    for (s, x) in points.iter().enumerate() {
        let hx = eval_symmetric(h, x, cfg.tol)?;
        let partials = (0..n)
            .map(|l| directional(h, x, &unit(n, l), cfg.steps.first))
            .collect::<Result<Vec<_>>>()?;
        let mut d = Defect::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v: f64 = (0..n)
                        .map(|l| hx[(l, i)] * partials[l][(j, k)] - hx[(l, j)] * partials[l][(i, k)])
                        .sum();
                    d.update(&v, &[i, j, k]);
                }
            }
        }
        if d.value() > worst.value() {
            at = Some(s);
        }
        worst.merge(d);
    }
    Ok(finish("codazzi", &worst, at, points.len(), cfg.tol))
}

/// `X_f(x) = H(x) ∇f(x)` with a central-difference gradient.
pub fn hamiltonian_field<B, F>(h: &B, f: &F, x: &[f64], steps: &FdSteps) -> Result<Vec<f64>>
where
    B: BivectorField + ?Sized,
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    Ok(h.eval(x)?.mul_vec(&fd_gradient(f, x, steps.first)))
}

/// `{f, g, m}(x) = [X_f, X_g](m)(x) = dm(D_{X_f}X_g − D_{X_g}X_f)`.
///
/// The outer derivative of the Hamiltonian fields uses the second step with
/// one Richardson extrapolation.
pub fn triple_bracket<B>(
    h: &B,
    f: &dyn Fn(&[f64]) -> f64,
    g: &dyn Fn(&[f64]) -> f64,
    m: &dyn Fn(&[f64]) -> f64,
    x: &[f64],
    steps: &FdSteps,
) -> Result<f64>
where
    B: BivectorField + ?Sized,
{
    check_dim(h.dim(), x)?;
    let dm = fd_gradient(m, x, steps.first);
    let one = |a: &dyn Fn(&[f64]) -> f64, b: &dyn Fn(&[f64]) -> f64| -> Result<f64> {
        let xa = hamiltonian_field(h, a, x, steps)?;
        let field = |y: &[f64]| hamiltonian_field(h, b, y, steps);
        let coarse = fd_along(x, &xa, steps.second, field)?;
        let fine = fd_along(x, &xa, steps.second / 2.0, field)?;
        let dxb: Vec<f64> = fine.iter().zip(&coarse).map(|(f, c)| (4.0 * f - c) / 3.0).collect();
        Ok(dot(&dm, &dxb))
    };
    Ok(one(f, g)? - one(g, f)?)
}

/// Coordinate form of the Hamiltonian characterisation:
/// `∇_{X_{x_i}} X_{x_k}(x_j) = ∇_{X_{x_j}} X_{x_k}(x_i)` for `i < j`, with
/// the derivative of the field `X_{x_k}` taken along `X_{x_i}(x)`.
pub fn hamilton_equiv_check<B: BivectorField + ?Sized>(h: &B, cfg: &ChartConfig) -> Result<CheckReport> {
    let n = h.dim();
    let points = accepted(h, cfg, "hamilton_equivalence")?;
    let mut worst = Defect::new();
    let mut at = None;
    for (s, x) in points.iter().enumerate() {
        let hx = eval_symmetric(h, x, cfg.tol)?;
        // dv[i] = D_{X_{x_i}} H, so column k is ∇_{X_{x_i}} X_{x_k}.
        let dv = (0..n)
            .map(|i| directional(h, x, &hx.column(i), cfg.steps.first))
            .collect::<Result<Vec<_>>>()?;
        let mut d = Defect::new();
        for k in 0..n {
            for i in 0..n {
                for j in i + 1..n {
                    d.update(&(dv[i][(j, k)] - dv[j][(i, k)]), &[i, j, k]);
                }
            }
        }
        if d.value() > worst.value() {
            at = Some(s);
        }
        worst.merge(d);
    }
    Ok(finish("hamilton_equivalence", &worst, at, points.len(), cfg.tol))
}

/// `𝒟_α β = d(h(α, β))` for constant covectors, by central differences.
pub fn d_product<B: BivectorField + ?Sized>(
    h: &B,
    alpha: &[f64],
    beta: &[f64],
    x: &[f64],
    steps: &FdSteps,
) -> Result<Vec<f64>> {
    let n = h.dim();
    check_dim(n, alpha)?;
    check_dim(n, beta)?;
    check_dim(n, x)?;
    let s = steps.first * (1.0 + inf_norm(x));
    (0..n)
        .map(|l| {
            let e = unit(n, l);
            let p = h.eval(&shifted(x, &e, s))?.bilinear(alpha, beta);
            let m = h.eval(&shifted(x, &e, -s))?.bilinear(alpha, beta);
            Ok((p - m) / (2.0 * s))
        })
        .collect()
}

/// Per-point data for the curvature stencil: `H(y)` and `∂_l H(y)`.
fn local_data<B: BivectorField + ?Sized>(h: &B, y: &[f64], step: f64) -> Result<(Matrix<f64>, Vec<Matrix<f64>>)> {
    let n = h.dim();
    let hy = h.eval(y)?;
    let s = step * (1.0 + inf_norm(y));
    let partials = (0..n)
        .map(|l| {
            let e = unit(n, l);
            let (p, m) = (h.eval(&shifted(y, &e, s))?, h.eval(&shifted(y, &e, -s))?);
            Ok(p.sub(&m).scale(&(1.0 / (2.0 * s))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((hy, partials))
}

/// Finite-difference curvature of `𝒟` on constant dual-basis covectors.
///
/// For a covector field `η`, `𝒟_α η = (∇h)(α, η) + D_{h#α} η`; on constant
/// covectors `η_{bc} = 𝒟_{e_b*} e_c* = d h_bc`, so
/// `R(e_a*, e_b*) e_c* = (∂h)(e_a*, η_{bc}) + D_{h#e_a*} η_{bc} − (a ↔ b)`.
/// Inner derivatives use the first step, outer ones the second.
pub fn d_curvature_fd<B: BivectorField + ?Sized>(h: &B, cfg: &ChartConfig) -> Result<CheckReport> {
    let n = h.dim();
    let points = accepted(h, cfg, "d_curvature")?;
    let (s1, s2) = (cfg.steps.first, cfg.steps.second);
    // eta[(b,c,l)] = ∂_l h_bc
    let eta_of = |y: &[f64]| -> Result<Vec<f64>> {
        let (_, p) = local_data(h, y, s1)?;
        let mut out = Vec::with_capacity(n * n * n);
        for b in 0..n {
            for c in 0..n {
                for pl in &p {
                    out.push(pl[(b, c)]);
                }
            }
        }
        Ok(out)
    };
    let mut worst = Defect::new();
    let mut at = None;
    for (s, x) in points.iter().enumerate() {
        let (hx, p) = local_data(h, x, s1)?;
        let eta = eta_of(x)?;
        // along[a][(b,c,l)] = D_{h#e_a*} η_bc
        let along = (0..n)
            .map(|a| fd_along(x, &hx.column(a), s2, eta_of))
            .collect::<Result<Vec<_>>>()?;
        let mut d = Defect::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for m in 0..n {
                        let term = |a: usize, b: usize| {
                            let tensorial: f64 = (0..n).map(|j| p[m][(a, j)] * eta[(b * n + c) * n + j]).sum();
                            tensorial + along[a][(b * n + c) * n + m]
                        };
                        d.update(&(term(a, b) - term(b, a)), &[a, b, c]);
                    }
                }
            }
        }
        if d.value() > worst.value() {
            at = Some(s);
        }
        worst.merge(d);
    }
    Ok(finish("d_curvature", &worst, at, points.len(), cfg.curvature_tol))
}

/// Status agreement between [`codazzi_check`] and [`hamilton_equiv_check`].
pub fn equivalence_agrees(codazzi: &CheckReport, hamilton: &CheckReport) -> CheckReport {
    let same = codazzi.status == hamilton.status;
    CheckReport::new("codazzi_hamilton_agreement", Status::from_bool(same), 0.0)
        .with_note(format!("codazzi {:?}, hamilton {:?}", codazzi.status, hamilton.status))
}
