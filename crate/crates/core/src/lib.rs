//! Solver for the real pole-free solution of the P_I^2 equation.

pub mod asymptotics;
pub mod error;
pub mod lax;
pub mod math;
pub mod ode;
pub mod rh;

pub use asymptotics::GFunction;
pub use error::{Pi2Error, Result};
pub use num_complex::{self, Complex64};
pub use lax::Jet4;
pub use math::*;
pub use ode::{BVPConfig, SolutionGrid};
pub use rh::{ContourSet, RMoments, RhConfig, RhDump};
