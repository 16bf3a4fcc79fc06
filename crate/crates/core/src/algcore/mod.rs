//! Structure-constant algebras, their axioms, derived brackets, power ideals
//! and bilinear forms.

mod bracket;
mod constructors;
mod forms;
mod json;
mod powers;
mod structure;

pub use bracket::{commutator_bracket, jacobiator, jacobi_check, BracketTensor};
pub use constructors::{direct_sum, field, truncated_polynomial, zero_algebra, Truncation};
pub use forms::{signature, BilinearForm, Signature};
pub use json::{algebra_from_json, algebra_to_json, coefficient, AlgebraJson, ProductEntry};
pub use powers::{power_ideal, power_ideals, subspace_contains};
pub use structure::{
    check_associative, check_commutative, check_left_symmetric, Algebra, AlgebraFlags,
    ProductTensor, StructureTensor,
};
