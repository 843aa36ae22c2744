//! The point z0, the g-function and the conformal map f built from it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::phase::theta_hat;
use crate::error::{Pi2Error, Result};
use crate::math::cubic::cubic_real_roots;
use crate::math::power::{BranchedPower, CutSide};

/// `2 * 6^{1/3}`, the modulus of z0 at T = 0.
pub fn z0_hat_modulus() -> f64 {
    2.0 * 6f64.cbrt()
}

/// Data defining g and f for one `(x, T)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GFunction {
    pub x: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub z0: f64,
    pub z0_hat: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl GFunction {
    pub fn sgn(&self) -> f64 {
        self.x.signum()
    }

    /// `|x|^{-2/3} T`, the rescaled deformation parameter.
    pub fn tau(&self) -> f64 {
        self.t * self.x.abs().powf(-2.0 / 3.0)
    }

    /// Residual of the defining cubic at z0.
    pub fn cubic_residual(&self) -> f64 {
        let z = self.z0;
        z * z * z + 48.0 * self.sgn() - 24.0 * z * self.tau()
    }

    fn sqrt_u(&self) -> BranchedPower {
        BranchedPower::principal(Complex64::new(self.z0, 0.0), 1, 2)
    }

    fn poly(&self, u: Complex64) -> Complex64 {
        (u * self.c1 + self.c2) * u + self.c3
    }
}

/// Solve the z0 cubic and build the g coefficients.
///
/// The root product is `-48 sgn(x)`, so exactly one real root has sign
/// `-sgn(x)`. It cannot meet a root of the other sign as T varies, which
/// makes it the branch continued from T = 0.
pub fn solve_z0(x: f64, t: f64) -> Result<GFunction> {
    if x == 0.0 || !x.is_finite() || !t.is_finite() {
        return Err(Pi2Error::Domain(format!("solve_z0 needs finite x != 0, got x = {x}, T = {t}")));
    }
    let s = x.signum();
    let tau = t * x.abs().powf(-2.0 / 3.0);
    let roots = cubic_real_roots(1.0, 0.0, -24.0 * tau, 48.0 * s)?;
    let on_branch: Vec<f64> = roots.iter().copied().filter(|r| r * s < 0.0).collect();
    if on_branch.len() != 1 {
        return Err(Pi2Error::Z0BranchDegenerate { candidates: roots });
    }
    let z0 = on_branch[0];
    if roots.iter().any(|&r| r != z0 && (r - z0).abs() <= 1e-8 * z0.abs().max(1.0)) {
        return Err(Pi2Error::Z0BranchDegenerate { candidates: roots });
    }
    Ok(GFunction {
        x,
        t,
        z0,
        z0_hat: -s * z0_hat_modulus(),
        c1: 1.0 / 105.0,
        c2: z0 / 30.0,
        c3: z0 * z0 / 36.0 - s * 2.0 / (3.0 * z0),
    })
}

/// Two-term large-|x| expansion of z0.
pub fn z0_expansion(x: f64, t: f64) -> f64 {
    let s = x.signum();
    -s * z0_hat_modulus() - s * (2.0 / 3.0) * 6f64.powf(2.0 / 3.0) * t * x.abs().powf(-2.0 / 3.0)
}

/// Leading-order solution `z0 |x|^{1/3} / 2`.
pub fn y_leading(x: f64, t: f64) -> Result<f64> {
    Ok(0.5 * solve_z0(x, t)?.z0 * x.abs().cbrt())
}

/// `c1 u^{7/2} + c2 u^{5/2} + c3 u^{3/2}` with `u = zeta - z0`, cut on `(-inf, z0]`.
pub fn g_eval(zeta: Complex64, g: &GFunction) -> Result<Complex64> {
    let u = zeta - g.z0;
    Ok(g.sqrt_u().eval(zeta)? * u * g.poly(u))
}

/// Boundary value of g on its cut.
pub fn g_eval_side(zeta: Complex64, g: &GFunction, side: CutSide) -> Result<Complex64> {
    let u = zeta - g.z0;
    Ok(g.sqrt_u().eval_side(zeta, side)? * u * g.poly(u))
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients (ascending powers of zeta) of `g^2 - theta_hat^2`, a degree 7
/// polynomial. The top four vanish identically; callers may check this.
pub fn g_theta_square_difference(g: &GFunction) -> [f64; 8] {
    let z0 = g.z0;
    // u = zeta - z0
    let u = [-z0, 1.0];
    let u3 = poly_mul(&poly_mul(&u, &u), &u);
    let p = [g.c3 - g.c2 * z0 + g.c1 * z0 * z0, g.c2 - 2.0 * g.c1 * z0, g.c1];
    let lhs = poly_mul(&u3, &poly_mul(&p, &p));
    let q = [g.sgn(), -g.tau() / 3.0, 0.0, 1.0 / 105.0];
    let rhs = poly_mul(&[0.0, 1.0], &poly_mul(&q, &q));
    let mut out = [0.0; 8];
    for k in 0..8 {
        out[k] = lhs.get(k).copied().unwrap_or(0.0) - rhs.get(k).copied().unwrap_or(0.0);
    }
    out
}

/// `g - theta_hat`, evaluated without cancellation for large `|zeta|`.
///
/// Far out this uses `(g^2 - theta_hat^2) / (g + theta_hat)` with the
/// identically vanishing top coefficients dropped.
pub fn g_minus_theta_hat(zeta: Complex64, g: &GFunction) -> Result<Complex64> {
    let gv = g_eval(zeta, g)?;
    let th = theta_hat(zeta, g.x, g.t)?;
    if zeta.norm() < 4.0 * g.z0.abs() + 4.0 {
        return Ok(gv - th);
    }
    let d = g_theta_square_difference(g);
    let num = ((zeta * d[3] + d[2]) * zeta + d[1]) * zeta + d[0];
    Ok(num / (gv + th))
}

fn inner_h(zeta: Complex64, g: &GFunction) -> Result<(Complex64, Complex64)> {
    let u = zeta - g.z0;
    let h = g.poly(u) * 1.5;
    if h.norm() < 1e-8 {
        return Err(Pi2Error::NotConformal(format!("inner argument vanishes at zeta = {zeta}")));
    }
    Ok((u, h))
}

fn two_thirds_power(h: Complex64) -> Result<Complex64> {
    BranchedPower::principal(Complex64::new(0.0, 0.0), 2, 3).eval(h).map_err(|_| {
        Pi2Error::NotConformal(format!("inner argument {h} on its cut"))
    })
}

/// `f = (3/2 (c3 + c2 u + c1 u^2))^{2/3} u`, the map with `(2/3) f^{3/2} = g`.
pub fn conformal_f(zeta: Complex64, g: &GFunction) -> Result<Complex64> {
    let (u, h) = inner_h(zeta, g)?;
    Ok(two_thirds_power(h)? * u)
}

/// Derivative of [`conformal_f`].
pub fn conformal_f_prime(zeta: Complex64, g: &GFunction) -> Result<Complex64> {
    let (u, h) = inner_h(zeta, g)?;
    let h23 = two_thirds_power(h)?;
    let dh = (u * (2.0 * g.c1) + g.c2) * 1.5;
    Ok(h23 + h23 / h * dh * u * (2.0 / 3.0))
}

/// Laurent data of f at z0: `f = q0 u + q1 u^2 + O(u^3)`.
pub fn conformal_f_taylor(g: &GFunction) -> (f64, f64) {
    let a = 1.5 * g.c3;
    (a.powf(2.0 / 3.0), g.c2 * a.powf(-1.0 / 3.0))
}
