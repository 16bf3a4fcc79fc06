//! Generalized pseudo-Hessian structures on a flat chart: a symmetric
//! bivector field `h(x)` and the canonical flat connection of `ℝ^n`.

mod checks;
mod field;

pub use checks::{
    codazzi_check, d_curvature_fd, d_product, equivalence_agrees, hamilton_equiv_check,
    hamiltonian_field, triple_bracket, ChartConfig, FdSteps, SampleSpec, Samples,
};
pub use field::{
    inverse_hessian_bivector, BivectorField, ConstantBivector, FnBivector, InverseHessianBivector,
    LinearBivector, DET_FLOOR,
};
