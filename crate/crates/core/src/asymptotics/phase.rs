//! The phase functions theta and its rescaled form theta_hat.

use num_complex::Complex64;

use crate::error::{Pi2Error, Result};
use crate::math::power::{BranchedPower, CutSide};

fn sqrt_zeta() -> BranchedPower {
    BranchedPower::principal(Complex64::new(0.0, 0.0), 1, 2)
}

fn assemble(root: Complex64, zeta: Complex64, a: f64, b: f64) -> Complex64 {
    // root * (zeta^3/105 - a zeta/3 + b)
    root * (zeta * zeta * zeta / 105.0 - zeta * (a / 3.0) + b)
}

/// `theta = zeta^{7/2}/105 - T zeta^{3/2}/3 + x zeta^{1/2}`, principal branch.
pub fn theta(zeta: Complex64, x: f64, t: f64) -> Result<Complex64> {
    Ok(assemble(sqrt_zeta().eval(zeta)?, zeta, t, x))
}

/// Boundary value of `theta` on the cut `(-inf, 0]`.
pub fn theta_side(zeta: Complex64, x: f64, t: f64, side: CutSide) -> Result<Complex64> {
    Ok(assemble(sqrt_zeta().eval_side(zeta, side)?, zeta, t, x))
}

/// Rescaled phase `|x|^{-7/6} theta(|x|^{1/3} zeta)`:
/// `zeta^{7/2}/105 - |x|^{-2/3} T zeta^{3/2}/3 + sgn(x) zeta^{1/2}`.
pub fn theta_hat(zeta: Complex64, x: f64, t: f64) -> Result<Complex64> {
    if x == 0.0 || !x.is_finite() {
        return Err(Pi2Error::Domain("theta_hat needs x != 0".into()));
    }
    let tau = t * x.abs().powf(-2.0 / 3.0);
    Ok(assemble(sqrt_zeta().eval(zeta)?, zeta, tau, x.signum()))
}
