//! Symmetric bivector fields on a flat chart of `ℝ^n`.

use crate::algcore::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::smooth::{hessian, third_derivative_along, SmoothFn};

/// Samples where the relevant determinant is below this are rejected.
pub const DET_FLOOR: f64 = 1e-8;

/// A symmetric bivector field `h`, given by its matrix `H(x)` in the chart.
pub trait BivectorField: Sync {
    fn dim(&self) -> usize;

    fn eval(&self, x: &[f64]) -> Result<Matrix<f64>>;

    /// `D_d H(x)` when a closed form is available. Callers fall back to
    /// central differences on `None`.
    fn derivative(&self, _x: &[f64], _d: &[f64]) -> Option<Result<Matrix<f64>>> {
        None
    }

    /// Sample acceptance. Rejected points are skipped by the checks.
    fn accepts(&self, _x: &[f64]) -> bool {
        true
    }
}

/// `H_ij(μ) = Σ_k c_ij^k μ_k` for a commutative algebra.
#[derive(Debug, Clone)]
pub struct LinearBivector {
    alg: Algebra<f64>,
}

impl LinearBivector {
    pub fn new<T: Scalar>(alg: &Algebra<T>) -> Result<Self> {
        if !alg.flags().commutative {
            return Err(Error::Input("a linear bivector needs a commutative product".into()));
        }
        Ok(Self { alg: alg.to_f64() })
    }

    fn linear(&self, mu: &[f64]) -> Matrix<f64> {
        let n = self.alg.dim();
        let st = self.alg.structure();
        Matrix::from_fn(n, n, |i, j| {
            st.basis_product(i, j).iter().zip(mu).map(|(c, m)| c * m).sum()
        })
    }
}

impl BivectorField for LinearBivector {
    fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn eval(&self, x: &[f64]) -> Result<Matrix<f64>> {
        check_dim(self.dim(), x)?;
        Ok(self.linear(x))
    }

    fn derivative(&self, x: &[f64], d: &[f64]) -> Option<Result<Matrix<f64>>> {
        Some(check_dim(self.dim(), x).map(|_| self.linear(d)))
    }
}

/// A constant field.
#[derive(Debug, Clone)]
pub struct ConstantBivector(pub Matrix<f64>);

impl BivectorField for ConstantBivector {
    fn dim(&self) -> usize {
        self.0.rows()
    }

    fn eval(&self, x: &[f64]) -> Result<Matrix<f64>> {
        check_dim(self.dim(), x)?;
        Ok(self.0.clone())
    }

    fn derivative(&self, x: &[f64], _d: &[f64]) -> Option<Result<Matrix<f64>>> {
        Some(check_dim(self.dim(), x).map(|_| Matrix::zeros(self.dim(), self.dim())))
    }
}

/// A field given by a closure; derivatives are taken by finite differences.
pub struct FnBivector<F> {
    pub dim: usize,
    pub f: F,
}

impl<F> BivectorField for FnBivector<F>
where
    F: Fn(&[f64]) -> Matrix<f64> + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> Result<Matrix<f64>> {
        check_dim(self.dim, x)?;
        Ok((self.f)(x))
    }
}

/// `h` with upper-left `r×r` block `(∂²f/∂x_i∂x_j)_{i,j<r}^{-1}` and zeros
/// elsewhere.
pub struct InverseHessianBivector<F> {
    f: F,
    r: usize,
}

impl<F: SmoothFn> InverseHessianBivector<F> {
    fn block(&self, x: &[f64]) -> Result<Matrix<f64>> {
        check_dim(self.f.dim(), x)?;
        if !self.f.in_domain(x) {
            return Err(Error::Domain { point: x.to_vec() });
        }
        let h = hessian(&self.f, x);
        Ok(Matrix::from_fn(self.r, self.r, |i, j| h[i][j]))
    }

    fn inverse_block(&self, x: &[f64]) -> Result<Matrix<f64>> {
        let b = self.block(x)?;
        if b.determinant().abs() < DET_FLOOR {
            return Err(Error::Singular);
        }
        b.inverse(0.0)
    }

    fn pad(&self, b: &Matrix<f64>) -> Matrix<f64> {
        let r = self.r;
        Matrix::from_fn(self.f.dim(), self.f.dim(), |i, j| if i < r && j < r { b[(i, j)] } else { 0.0 })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn function(&self) -> &F {
        &self.f
    }
}

impl<F: SmoothFn> BivectorField for InverseHessianBivector<F> {
    fn dim(&self) -> usize {
        self.f.dim()
    }

    fn eval(&self, x: &[f64]) -> Result<Matrix<f64>> {
        Ok(self.pad(&self.inverse_block(x)?))
    }

    /// `D_d(B^{-1}) = −B^{-1} (D³f[·,·,d]) B^{-1}` on the block.
    fn derivative(&self, x: &[f64], d: &[f64]) -> Option<Result<Matrix<f64>>> {
        let run = || -> Result<Matrix<f64>> {
            check_dim(self.f.dim(), d)?;
            let inv = self.inverse_block(x)?;
            let t = third_derivative_along(&self.f, x, d);
            let db = Matrix::from_fn(self.r, self.r, |i, j| t[i][j]);
            Ok(self.pad(&inv.matmul(&db).matmul(&inv).neg()))
        };
        Some(run())
    }

    fn accepts(&self, x: &[f64]) -> bool {
        x.len() == self.f.dim()
            && self.f.in_domain(x)
            && self.block(x).map(|b| b.determinant().abs() >= DET_FLOOR).unwrap_or(false)
    }
}

/// Builds the inverse-Hessian field of `f` on its first `r` coordinates.
///
/// Samples of `cfg` with a near-singular block are rejected and logged; it
/// is an error when no sample survives.
pub fn inverse_hessian_bivector<F: SmoothFn>(
    f: F,
    r: usize,
    cfg: &super::ChartConfig,
) -> Result<InverseHessianBivector<F>> {
    let n = f.dim();
    if r == 0 || r > n {
        return Err(Error::Input(format!("block size {r} outside 1..={n}")));
    }
    if cfg.dim != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cfg.dim,
        });
    }
    let field = InverseHessianBivector { f, r };
    let points = cfg.points();
    let accepted = points.iter().filter(|x| field.accepts(x)).count();
    if accepted < points.len() {
        log::info!(
            "inverse Hessian: rejected {} of {} samples with |det| < {DET_FLOOR:e} or outside the domain",
            points.len() - accepted,
            points.len()
        );
    }
    if accepted == 0 {
        return Err(Error::Singular);
    }
    Ok(field)
}

pub(crate) fn check_dim(n: usize, x: &[f64]) -> Result<()> {
    if x.len() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        })
    }
}
