//! Smooth scalar functions evaluated over binary64 or over hyper-dual
//! numbers, which give exact first, second and third directional
//! derivatives.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Number type a smooth function can be evaluated over.
pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn cst(v: f64) -> Self;
    /// The real part.
    fn value(&self) -> f64;
    fn ln_abs(self) -> Self;
    fn exp(self) -> Self;
    fn atan(self) -> Self;
    fn sqrt(self) -> Self;
    fn powi(self, n: i32) -> Self;

    fn recip(self) -> Self {
        Self::cst(1.0) / self
    }
}

impl Real for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn ln_abs(self) -> Self {
        self.abs().ln()
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn atan(self) -> Self {
        f64::atan(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
}

/// `a + Σ a_S ε_S` over subsets `S` of three nilpotent units with
/// `ε_i² = 0`. Component `m` is the coefficient of `Π_{i∈m} ε_i` (bit mask).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperDual3(pub [f64; 8]);

impl HyperDual3 {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = v;
        Self(c)
    }

    /// `v + d1 ε1 + d2 ε2 + d3 ε3`.
    pub fn seeded(v: f64, d: [f64; 3]) -> Self {
        let mut c = [0.0; 8];
        c[0] = v;
        c[1] = d[0];
        c[2] = d[1];
        c[4] = d[2];
        Self(c)
    }

    pub fn part(&self, mask: usize) -> f64 {
        self.0[mask]
    }

    /// `f(self)` given `f, f', f'', f'''` at the real part.
    fn chain(self, d: [f64; 4]) -> Self {
        let mut nil = self;
        nil.0[0] = 0.0;
        let mut out = Self::constant(d[0]);
        let mut power = Self::constant(1.0);
        for (k, dk) in d.iter().enumerate().skip(1) {
            power = power * nil;
            let f = dk / [1.0, 1.0, 2.0, 6.0][k];
            for m in 0..8 {
                out.0[m] += f * power.0[m];
            }
        }
        out
    }
}

impl Add for HyperDual3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|m| self.0[m] + o.0[m]))
    }
}

impl Sub for HyperDual3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|m| self.0[m] - o.0[m]))
    }
}

impl Neg for HyperDual3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

impl Mul for HyperDual3 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [0.0; 8];
        for (a, ca) in self.0.iter().enumerate() {
            if *ca == 0.0 {
                continue;
            }
            for (b, cb) in o.0.iter().enumerate() {
                if a & b == 0 {
                    c[a | b] += ca * cb;
                }
            }
        }
        Self(c)
    }
}

impl Div for HyperDual3 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let x = o.0[0];
        self * o.chain([1.0 / x, -1.0 / (x * x), 2.0 / x.powi(3), -6.0 / x.powi(4)])
    }
}

impl Real for HyperDual3 {
    fn cst(v: f64) -> Self {
        Self::constant(v)
    }
    fn value(&self) -> f64 {
        self.0[0]
    }
    fn ln_abs(self) -> Self {
        let x = self.0[0];
        self.chain([x.abs().ln(), 1.0 / x, -1.0 / (x * x), 2.0 / x.powi(3)])
    }
    fn exp(self) -> Self {
        let e = self.0[0].exp();
        self.chain([e; 4])
    }
    fn atan(self) -> Self {
        let x = self.0[0];
        let w = 1.0 + x * x;
        self.chain([
            x.atan(),
            1.0 / w,
            -2.0 * x / (w * w),
            (6.0 * x * x - 2.0) / w.powi(3),
        ])
    }
    fn sqrt(self) -> Self {
        let s = self.0[0].sqrt();
        self.chain([s, 0.5 / s, -0.25 / s.powi(3), 0.375 / s.powi(5)])
    }
    fn powi(self, n: i32) -> Self {
        let x = self.0[0];
        let nf = n as f64;
        self.chain([
            x.powi(n),
            nf * x.powi(n - 1),
            nf * (nf - 1.0) * x.powi(n - 2),
            nf * (nf - 1.0) * (nf - 2.0) * x.powi(n - 3),
        ])
    }
}

/// A scalar function on an open subset of `ℝ^n`.
pub trait SmoothFn: Sync {
    fn dim(&self) -> usize;

    fn eval<R: Real>(&self, x: &[R]) -> R;

    /// Domain guard; points outside are never evaluated.
    fn in_domain(&self, _x: &[f64]) -> bool {
        true
    }
}

fn lift(x: &[f64], dirs: [&[f64]; 3]) -> Vec<HyperDual3> {
    (0..x.len())
        .map(|i| HyperDual3::seeded(x[i], [dirs[0][i], dirs[1][i], dirs[2][i]]))
        .collect()
}

/// `D³f(x)[a, b, c]` together with the lower derivatives
/// `f, Df[a], Df[b], D²f[a,b]`, ... in one hyper-dual evaluation.
pub fn jet<F: SmoothFn + ?Sized>(f: &F, x: &[f64], a: &[f64], b: &[f64], c: &[f64]) -> HyperDual3 {
    f.eval(&lift(x, [a, b, c]))
}

pub fn value<F: SmoothFn + ?Sized>(f: &F, x: &[f64]) -> f64 {
    f.eval(x)
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

pub fn gradient<F: SmoothFn + ?Sized>(f: &F, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let zero = vec![0.0; n];
    (0..n)
        .map(|i| jet(f, x, &unit(n, i), &zero, &zero).part(1))
        .collect()
}

/// Exact Hessian matrix, row-major.
pub fn hessian<F: SmoothFn + ?Sized>(f: &F, x: &[f64]) -> Vec<Vec<f64>> {
    let n = x.len();
    let zero = vec![0.0; n];
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| jet(f, x, &unit(n, i), &unit(n, j), &zero).part(3))
                .collect()
        })
        .collect()
}

/// `D³f(x)[e_i, e_j, d]` as a matrix in `(i, j)`.
pub fn third_derivative_along<F: SmoothFn + ?Sized>(f: &F, x: &[f64], d: &[f64]) -> Vec<Vec<f64>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| jet(f, x, &unit(n, i), &unit(n, j), d).part(7))
                .collect()
        })
        .collect()
}
