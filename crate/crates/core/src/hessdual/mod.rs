//! The canonical pseudo-Hessian geometry on the dual of a commutative
//! associative algebra.

mod algebras;
mod catalog;
mod gram;
mod invariants;
mod potential;

pub use algebras::{
    complex_algebra, cubic_nilpotent, diagonal_algebra, example_algebra, quartic_nilpotent,
    unital_four, unital_three, DIAGONAL_DIM,
};
pub use gram::{
    ambient_metric, fundamental_vector, h_matrix, orbit_map, orbit_metric, orbit_rank,
    orbit_sample, GramData, OrbitMetric, DEFAULT_SEED,
};
pub use invariants::{
    codazzi_tensor_check, connection_table, hessian_curvature, hessian_curvature_check,
    koszul_alpha, koszul_beta, koszul_beta_symmetry, koszul_identity, special_real_check,
    ConnectionTable,
};
pub use potential::{
    harmonic_check, potential_check, FdConfig, FnPotential, KnownPotential, Potential, PotentialFn,
};
pub use catalog::{
    catalog, run_catalog, run_entry, CatalogConfig, CatalogEntry, Claim, EntryReport, Fact,
    OrbitSpec,
};
