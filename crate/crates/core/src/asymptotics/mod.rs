//! Phase functions, the g-function and the leading-order law.

pub mod gfunc;
pub mod phase;
pub mod reg;

pub use gfunc::{
    conformal_f, conformal_f_prime, conformal_f_taylor, g_eval, g_eval_side, g_minus_theta_hat,
    g_theta_square_difference, solve_z0, y_leading, z0_expansion, z0_hat_modulus, GFunction,
};
pub use phase::{theta, theta_hat, theta_side};
pub use reg::{
    measure_eps0, normalized_re_g, ray_maximum, ray_minimum, re_g_scan, ReGBoundsReport, ReGSample,
    EPS0_STEP, LENS_ANGLE,
};
