//! Structure-constant algebra toolkit for para-Kähler phase spaces of
//! left-symmetric algebras and for the canonical pseudo-Hessian geometry on
//! the dual of a commutative associative algebra.
//!
//! Every construction works on finite-dimensional spaces given by structure
//! constants. Identities are checked in exact rational arithmetic
//! ([`Rational`]) whenever the inputs are rational; binary64 is used for
//! matrix exponentials, finite differences and sampling.
//!
//! The crate is organised in four layers:
//!
//! * [`algcore`]: structure tensors, algebra axioms, brackets, power ideals,
//!   signatures and the JSON algebra format.
//! * [`phasespace`]: products on `A*`, quasi-S-matrix conditions, phase-space
//!   brackets, Levi-Civita connections and the para-Kähler verification suite.
//! * [`hessdual`]: the bivector `h` on `A*`, orbits of `exp(L_u^*)`, orbit
//!   metrics, Hessian curvature, Koszul forms, potentials and the built-in
//!   example catalog.
//! * [`chartgeom`]: Codazzi and Hamiltonian checks for a general symmetric
//!   bivector field on a flat chart.

pub mod algcore;
pub mod chartgeom;
pub mod error;
pub mod expm;
pub mod hessdual;
pub mod linalg;
pub mod phasespace;
pub mod report;
pub mod scalar;
pub mod smooth;
pub mod tensor;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use report::{CheckReport, CheckSuite, Status};
pub use scalar::{parse_rational, Rational, Scalar};
pub use tensor::Tensor;
