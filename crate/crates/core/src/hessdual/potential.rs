//! Potentials of the orbit metrics and their finite-difference verification.

use serde::{Deserialize, Serialize};

use crate::algcore::Algebra;
use crate::error::{Error, Result};
use crate::report::{CheckReport, Status};
use crate::scalar::Scalar;
use crate::smooth::{Real, SmoothFn};

use super::gram::{ambient_metric, h_matrix};

/// A scalar function on an open subset of `A*` with a domain guard.
pub trait PotentialFn: Sync {
    fn value(&self, x: &[f64]) -> f64;

    fn in_domain(&self, _x: &[f64]) -> bool {
        true
    }
}

impl<F: SmoothFn> PotentialFn for F {
    fn value(&self, x: &[f64]) -> f64 {
        self.eval(x)
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        SmoothFn::in_domain(self, x)
    }
}

/// A binary64 closure with an explicit guard.
pub struct FnPotential<F, G> {
    pub f: F,
    pub guard: G,
}

impl<F, G> PotentialFn for FnPotential<F, G>
where
    F: Fn(&[f64]) -> f64 + Sync,
    G: Fn(&[f64]) -> bool + Sync,
{
    fn value(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        (self.guard)(x)
    }
}

/// Closed-form potentials of the six worked examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KnownPotential {
    /// `Σ u_i ln|u_i|`.
    EntropyLike,
    /// `½α ln(α²+β²) + β arctan(α/β)` on `β ≠ 0`.
    ComplexLog,
    /// `−y³/(6z²) + xy/z` on `z ≠ 0`.
    CubicNilpotent,
    /// `x²/(2y)` on `y ≠ 0`, for the lines `z = 0` of the cubic example.
    CubicLine,
    /// `z ln|y| + x²/(2y)` on `y ≠ 0`.
    UnitalThree,
    /// `z⁴/(12t³) + y²/(2t) − z²y/(2t) + xz/t` on `t ≠ 0`.
    QuarticNilpotent,
    /// `−z³/(6t²) + yz/t + x ln|t|` on `t ≠ 0`.
    UnitalFour,
}

/// Relative distance to the singular locus required of admissible points.
const GUARD_MARGIN: f64 = 1e-2;

impl KnownPotential {
    pub fn dim(self, diagonal_dim: usize) -> usize {
        match self {
            Self::EntropyLike => diagonal_dim,
            Self::ComplexLog => 2,
            Self::CubicNilpotent | Self::CubicLine | Self::UnitalThree => 3,
            Self::QuarticNilpotent | Self::UnitalFour => 4,
        }
    }

    /// Coordinates that must stay away from zero.
    fn guarded(self, n: usize) -> Vec<usize> {
        match self {
            Self::EntropyLike => (0..n).collect(),
            Self::ComplexLog => vec![1],
            Self::CubicNilpotent => vec![2],
            Self::CubicLine | Self::UnitalThree => vec![1],
            Self::QuarticNilpotent | Self::UnitalFour => vec![3],
        }
    }

    pub fn eval<R: Real>(self, x: &[R]) -> R {
        let c = R::cst;
        match self {
            Self::EntropyLike => x.iter().fold(c(0.0), |acc, &u| acc + u * u.ln_abs()),
            Self::ComplexLog => {
                let (a, b) = (x[0], x[1]);
                c(0.5) * a * (a * a + b * b).ln_abs() + b * (a / b).atan()
            }
            Self::CubicNilpotent => {
                let (x, y, z) = (x[0], x[1], x[2]);
                -(y.powi(3) / (c(6.0) * z * z)) + x * y / z
            }
            Self::CubicLine => x[0] * x[0] / (c(2.0) * x[1]),
            Self::UnitalThree => {
                let (x, y, z) = (x[0], x[1], x[2]);
                z * y.ln_abs() + x * x / (c(2.0) * y)
            }
            Self::QuarticNilpotent => {
                let (x, y, z, t) = (x[0], x[1], x[2], x[3]);
                z.powi(4) / (c(12.0) * t.powi(3)) + y * y / (c(2.0) * t) - z * z * y / (c(2.0) * t)
                    + x * z / t
            }
            Self::UnitalFour => {
                let (x, y, z, t) = (x[0], x[1], x[2], x[3]);
                -(z.powi(3) / (c(6.0) * t * t)) + y * z / t + x * t.ln_abs()
            }
        }
    }

    pub fn admissible(self, x: &[f64]) -> bool {
        let scale = 1.0 + x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        x.iter().all(|v| v.is_finite())
            && self
                .guarded(x.len())
                .into_iter()
                .all(|i| x[i].abs() > GUARD_MARGIN * scale)
    }
}

/// A [`KnownPotential`] bound to a dimension.
#[derive(Debug, Clone, Copy)]
pub struct Potential {
    pub kind: KnownPotential,
    pub dim: usize,
}

impl SmoothFn for Potential {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval<R: Real>(&self, x: &[R]) -> R {
        self.kind.eval(x)
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        x.len() == self.dim && self.kind.admissible(x)
    }
}

/// Central finite-difference settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    /// Base step, scaled by `1 + |μ|∞`.
    pub step: f64,
    pub tol: f64,
    /// One level of Richardson extrapolation with the step halved.
    pub richardson: bool,
}

impl Default for FdConfig {
    fn default() -> Self {
        Self {
            step: 1e-4,
            tol: 1e-5,
            richardson: false,
        }
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn offset(mu: &[f64], terms: &[(f64, &[f64])]) -> Vec<f64> {
    let mut p = mu.to_vec();
    for (s, d) in terms {
        for (pi, di) in p.iter_mut().zip(d.iter()) {
            *pi += s * di;
        }
    }
    p
}

/// `D²φ(μ)[d1, d2]` by the four-point central stencil.
fn second_directional<P: PotentialFn + ?Sized>(
    phi: &P,
    mu: &[f64],
    d1: &[f64],
    d2: &[f64],
    h: f64,
) -> Result<f64> {
    let mut acc = 0.0;
    for (s1, s2, w) in [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)] {
        let p = offset(mu, &[(s1 * h, d1), (s2 * h, d2)]);
        if !phi.in_domain(&p) {
            return Err(Error::Domain { point: p });
        }
        acc += w * phi.value(&p);
    }
    Ok(acc / (4.0 * h * h))
}

fn fd_second<P: PotentialFn + ?Sized>(phi: &P, mu: &[f64], d1: &[f64], d2: &[f64], cfg: &FdConfig) -> Result<f64> {
    let (n1, n2) = (inf_norm(d1), inf_norm(d2));
    if n1 == 0.0 || n2 == 0.0 {
        return Ok(0.0);
    }
    let u1: Vec<f64> = d1.iter().map(|x| x / n1).collect();
    let u2: Vec<f64> = d2.iter().map(|x| x / n2).collect();
    let h = cfg.step * (1.0 + inf_norm(mu));
    if !(h.is_finite() && h > f64::MIN_POSITIVE.sqrt()) {
        return Err(Error::StepUnderflow(h));
    }
    let coarse = second_directional(phi, mu, &u1, &u2, h)?;
    let value = if cfg.richardson {
        let fine = second_directional(phi, mu, &u1, &u2, h / 2.0)?;
        (4.0 * fine - coarse) / 3.0
    } else {
        coarse
    };
    Ok(n1 * n2 * value)
}

/// Largest entrywise difference relative to the largest reference entry,
/// with its 0-based position.
fn relative_error(fd: &[Vec<f64>], reference: &[Vec<f64>]) -> (f64, Option<(usize, usize)>) {
    let scale = reference
        .iter()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let mut worst = (0.0, None);
    for (i, (a, b)) in fd.iter().zip(reference).enumerate() {
        for (j, (x, y)) in a.iter().zip(b).enumerate() {
            let e = (x - y).abs() / scale;
            if worst.1.is_none() || e > worst.0 {
                worst = (e, Some((i, j)));
            }
        }
    }
    worst
}

/// Finite-difference Hessian of `φ` along the tangent generators
/// `X_{e_i}(μ)`, `i ∈ I`, compared with `G_I`; on open orbits also the full
/// coordinate Hessian compared with `H(μ)^{-1}`.
pub fn potential_check<T: Scalar, P: PotentialFn + ?Sized>(
    alg: &Algebra<T>,
    phi: &P,
    mu: &[f64],
    cfg: &FdConfig,
) -> Result<CheckReport> {
    if !phi.in_domain(mu) {
        return Err(Error::Domain { point: mu.to_vec() });
    }
    let af = alg.to_f64();
    let gram = h_matrix(&af, mu)?;
    let dirs: Vec<Vec<f64>> = gram.tangent_indices.iter().map(|&i| gram.h.column(i)).collect();
    let fd = dirs
        .iter()
        .map(|d1| dirs.iter().map(|d2| fd_second(phi, mu, d1, d2, cfg)).collect())
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let (mut err, mut at) = relative_error(&fd, &gram.gram.to_rows());
    let mut witness = at.map(|(i, j)| vec![gram.tangent_indices[i] + 1, gram.tangent_indices[j] + 1]);
    let mut note = format!("orbit dimension {}", gram.rank);
    let n = alg.dim();
    if gram.rank == n {
        let g = ambient_metric(&af, mu)?;
        let e: Vec<Vec<f64>> = (0..n)
            .map(|i| crate::linalg::unit::<f64>(n, i))
            .collect();
        let full = e
            .iter()
            .map(|d1| e.iter().map(|d2| fd_second(phi, mu, d1, d2, cfg)).collect())
            .collect::<Result<Vec<Vec<f64>>>>()?;
        let (e2, at2) = relative_error(&full, &g.matrix().to_rows());
        note.push_str("; ambient Hessian compared with H^-1");
        if e2 > err {
            err = e2;
            at = at2;
            witness = at.map(|(i, j)| vec![i + 1, j + 1]);
        }
    }
    let ok = err <= cfg.tol;
    let mut report = CheckReport::new("potential", Status::from_bool(ok), err).with_note(note);
    if !ok {
        report.witness = witness;
    }
    Ok(report)
}

/// Five-point Laplacian of a function of two variables.
pub fn harmonic_check<P: PotentialFn + ?Sized>(phi: &P, mu: &[f64], cfg: &FdConfig) -> Result<CheckReport> {
    if mu.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: mu.len(),
        });
    }
    let h = cfg.step * (1.0 + inf_norm(mu));
    if !(h.is_finite() && h > f64::MIN_POSITIVE.sqrt()) {
        return Err(Error::StepUnderflow(h));
    }
    let mut points = vec![mu.to_vec()];
    for (dx, dy) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
        points.push(vec![mu[0] + dx, mu[1] + dy]);
    }
    if let Some(p) = points.iter().find(|p| !phi.in_domain(p)) {
        return Err(Error::Domain { point: p.clone() });
    }
    let v: Vec<f64> = points.iter().map(|p| phi.value(p)).collect();
    let lap = (v[1] + v[2] + v[3] + v[4] - 4.0 * v[0]) / (h * h);
    Ok(CheckReport::new("harmonic", Status::from_bool(lap.abs() <= cfg.tol), lap.abs()))
}
