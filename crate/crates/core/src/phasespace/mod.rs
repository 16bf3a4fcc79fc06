//! Para-Kähler phase spaces of left-symmetric algebras over a point base.

mod compat;
mod geometry;
mod products;
mod rmatrix;
mod space;

pub use compat::{
    curvature_identity_defects, lie_extendible_check, mixed_curvature_on_a,
    mixed_curvature_on_dual,
};
pub use geometry::{
    ce_differential_2form, covariant_derivative_of_k, levi_civita_point, nijenhuis,
    para_kahler_verify,
};
pub use products::{
    check_quasi_s_matrix, curvature, delta_r, dual_action, dual_of_product, q_delta, s_bracket,
    s_derivative, s_parallel_basis, s_second_derivative, t_from_r, t_star, ProductTensor,
};
pub use rmatrix::{rmatrix_from_json, rmatrix_to_json, RMatrix, RMatrixJson};
pub use space::{
    build_bracket_r, build_from_pair, build_phase_space_r, build_phase_space_r_unchecked,
    build_triangular, hyperbolic_metric, k0, k_r, metric_r, pair_bracket_tensor, pair_connection,
    triangular_bracket, triangular_bracket_r, xi_check, xi_matrix, PhaseSpace,
};
