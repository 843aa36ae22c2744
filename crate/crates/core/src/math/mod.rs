//! Numerical primitives shared by both engines.

pub mod airy;
pub mod cubic;
pub mod gamma;
pub mod mat2;
pub mod power;
pub mod quadrature;

pub use airy::{airy, airy_eval, airy_scaled, airy_zeta, AiryValue};
pub use cubic::{cubic_discriminant, cubic_real_roots};
pub use gamma::{airy_coeffs, gamma, ln_gamma, AiryCoeffs};
pub use mat2::{mat2_mul, Mat2C};
pub use power::{branched_power_eval, BranchedPower, CutSide, Exponent};
pub use quadrature::{gauss_collocation_tableau, gauss_legendre, legendre_values};
