//! Boundary-value engine on a finite window.

pub mod banded;
pub mod bvp;
pub mod grid;

pub use bvp::{
    boundary_values, continuation_in_t, continuation_in_t_with_step, graded_mesh, initial_guess, solve_bvp,
    solve_bvp_detailed, BVPConfig, BvpOutcome,
};
pub use grid::{jet_at, y5_from_equation, EngineTag, SolutionGrid};
