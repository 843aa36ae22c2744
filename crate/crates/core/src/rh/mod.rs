//! Riemann-Hilbert steepest-descent engine for large |x|.

pub mod airy_model;
pub mod cauchy;
pub mod contour;
pub mod parametrix;
pub mod solve;

pub use airy_model::{airy_model_jump, airy_model_m, airy_model_m_side, airy_model_normalized, n_matrix, Sector};
pub use contour::{build_contour, Component, ContourSet, Panel, RhConfig};
pub use parametrix::{
    circle_jump_minus_identity, delta_residues, delta_terms, jump_vr, jump_vr_minus_identity, local_prefactor,
    parametrix_local, parametrix_outer, parametrix_outer_side,
};
pub use solve::{extract_y, rh_evaluate, solve_r, solve_r_on, RMoments, RhDump};
