//! Residual operator, Lax pair and the compatibility oracle.
//!
//! For `Psi_zeta = U Psi`, `Psi_x = W Psi` the zero-curvature combination
//! `U_x - W_zeta + U W - W U` reduces to `-F sigma3`, where `F` is the
//! residual of the fourth-order equation. A jet solves the equation exactly
//! when the defect vanishes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::math::mat2::Mat2C;

/// Value and first four x-derivatives of y at `(x, T)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet4 {
    pub y: f64,
    pub y_x: f64,
    pub y_xx: f64,
    pub y_xxx: f64,
    pub y_xxxx: f64,
    pub x: f64,
    #[serde(rename = "T")]
    pub t: f64,
}

impl Jet4 {
    pub fn is_finite(&self) -> bool {
        [self.y, self.y_x, self.y_xx, self.y_xxx, self.y_xxxx, self.x, self.t]
            .iter()
            .all(|v| v.is_finite())
    }

    /// Largest derivative magnitude, used to scale tolerances.
    pub fn magnitude(&self) -> f64 {
        [self.y, self.y_x, self.y_xx, self.y_xxx, self.y_xxxx]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// `F = x - T y + y^3/6 + (y_x^2 + 2 y y_xx)/24 + y_xxxx/240`.
pub fn pi2_residual(j: &Jet4) -> f64 {
    j.x - j.t * j.y + j.y.powi(3) / 6.0 + (j.y_x * j.y_x + 2.0 * j.y * j.y_xx) / 24.0 + j.y_xxxx / 240.0
}

/// The fourth derivative that makes [`pi2_residual`] vanish.
pub fn y_xxxx_from_equation(x: f64, t: f64, y: f64, y_x: f64, y_xx: f64) -> f64 {
    240.0 * (t * y - x - y.powi(3) / 6.0 - (y_x * y_x + 2.0 * y * y_xx) / 24.0)
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

pub fn lax_u(zeta: Complex64, j: &Jet4) -> Mat2C {
    let (y, yx, yxx, yxxx) = (j.y, j.y_x, j.y_xx, j.y_xxx);
    let z2 = zeta * zeta;
    let u11 = -zeta * (4.0 * yx) - re(12.0 * y * yx + yxxx);
    let u12 = z2 * 8.0 + zeta * (8.0 * y) + re(12.0 * y * y + 2.0 * yxx - 120.0 * j.t);
    let u21 = z2 * zeta * 8.0 - z2 * (8.0 * y) - zeta * (4.0 * y * y + 2.0 * yxx + 120.0 * j.t)
        + re(16.0 * y.powi(3) - 2.0 * yx * yx + 4.0 * y * yxx + 240.0 * j.x);
    Mat2C::new(u11, u12, u21, -u11).scale(re(1.0 / 240.0))
}

pub fn lax_w(zeta: Complex64, y: f64) -> Mat2C {
    Mat2C::new(re(0.0), re(1.0), zeta - 2.0 * y, re(0.0))
}

/// `dU/dx` along the jet, including the explicit `240 x` term.
fn lax_u_x(zeta: Complex64, j: &Jet4) -> Mat2C {
    let (y, yx, yxx, yxxx, y4) = (j.y, j.y_x, j.y_xx, j.y_xxx, j.y_xxxx);
    let z2 = zeta * zeta;
    let a = -zeta * (4.0 * yxx) - re(12.0 * yx * yx + 12.0 * y * yxx + y4);
    let b = zeta * (8.0 * yx) + re(24.0 * y * yx + 2.0 * yxxx);
    let c = -z2 * (8.0 * yx) - zeta * (8.0 * y * yx + 2.0 * yxxx)
        + re(48.0 * y * y * yx + 4.0 * y * yxxx + 240.0);
    Mat2C::new(a, b, c, -a).scale(re(1.0 / 240.0))
}

/// `U_x - W_zeta + U W - W U`; equals `-F sigma3` for every zeta.
pub fn compatibility_defect(zeta: Complex64, j: &Jet4) -> Mat2C {
    let u = lax_u(zeta, j);
    let w = lax_w(zeta, j.y);
    let w_zeta = Mat2C::new(re(0.0), re(0.0), re(1.0), re(0.0));
    lax_u_x(zeta, j) - w_zeta + u * w - w * u
}

/// Ordered product `L(s4) U(s5) L(s6) U(s0) L(s1) U(s2) L(s3)`; the input is
/// `[s4, s5, s6, s0, s1, s2, s3]`. Equals `[[0,1],[-1,0]]` iff the Stokes
/// relation holds.
pub fn stokes_relation_check(s: &[Complex64; 7]) -> Mat2C {
    s.iter().enumerate().fold(Mat2C::identity(), |acc, (k, &v)| {
        let factor = if k % 2 == 0 { Mat2C::lower(v) } else { Mat2C::upper(v) };
        acc * factor
    })
}

/// Stokes data of the pole-free solution in the order expected by
/// [`stokes_relation_check`].
pub fn pole_free_stokes_data() -> [Complex64; 7] {
    [re(-1.0), re(0.0), re(0.0), re(1.0), re(0.0), re(0.0), re(-1.0)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jet(y: [f64; 5], x: f64, t: f64) -> Jet4 {
        Jet4 { y: y[0], y_x: y[1], y_xx: y[2], y_xxx: y[3], y_xxxx: y[4], x, t }
    }

    fn c(a: f64, b: f64) -> Complex64 {
        Complex64::new(a, b)
    }

    #[test]
    fn residual_plug_ins() {
        assert_eq!(pi2_residual(&jet([0.0; 5], 5.0, 3.0)), 5.0);
        let j = jet([2.0, 0.0, 0.0, 0.0, 0.0], 2.0 / 3.0, 1.0);
        assert!(pi2_residual(&j).abs() < 1e-15);
        let j = jet([2.0, 0.0, 0.0, 0.0, 0.0], 1.0, 1.0);
        assert!((pi2_residual(&j) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn u_special_cases() {
        let u = lax_u(c(1.0, 0.0), &jet([0.0; 5], 0.0, 0.0));
        assert_eq!(u, Mat2C::from_real(0.0, 1.0 / 30.0, 1.0 / 30.0, 0.0));
        let u = lax_u(c(0.0, 0.0), &jet([0.0; 5], 0.0, 1.0));
        assert_eq!(u, Mat2C::from_real(0.0, -0.5, 0.0, 0.0));
        let u = lax_u(c(0.0, 0.0), &jet([0.0; 5], 1.0, 0.0));
        assert_eq!(u, Mat2C::from_real(0.0, 0.0, 1.0, 0.0));
    }

    #[test]
    fn w_special_cases() {
        assert_eq!(lax_w(c(3.0, 0.0), 1.0), Mat2C::from_real(0.0, 1.0, 1.0, 0.0));
        assert_eq!(lax_w(c(0.0, 0.0), 0.0), Mat2C::from_real(0.0, 1.0, 0.0, 0.0));
        assert_eq!(lax_w(c(4.4, 0.0), 2.2), Mat2C::from_real(0.0, 1.0, 0.0, 0.0));
        assert_eq!(lax_w(c(5.0, 1.0), 1.0).det(), -c(3.0, 1.0));
    }

    #[test]
    fn defect_of_zero_jet() {
        let d = compatibility_defect(c(2.0, -1.0), &jet([0.0; 5], 5.0, 0.0));
        assert!((d - Mat2C::from_real(-5.0, 0.0, 0.0, 5.0)).norm() < 1e-13);
    }

    #[test]
    fn defect_vanishes_on_solutions() {
        let (x, t) = (0.7, -1.3);
        let (y, yx, yxx, yxxx) = (0.4, -1.1, 2.0, 0.3);
        let j = jet([y, yx, yxx, yxxx, y_xxxx_from_equation(x, t, y, yx, yxx)], x, t);
        assert!(pi2_residual(&j).abs() < 1e-13);
        assert!(compatibility_defect(c(3.0, 2.0), &j).norm() < 1e-12);
    }

    #[test]
    fn stokes_product() {
        let rot = Mat2C::from_real(0.0, 1.0, -1.0, 0.0);
        assert_eq!(stokes_relation_check(&pole_free_stokes_data()), rot);
        assert_eq!(stokes_relation_check(&[c(0.0, 0.0); 7]), Mat2C::identity());
        let mut s = pole_free_stokes_data();
        s[3] = c(1.001, 0.0);
        assert!((stokes_relation_check(&s) - rot).norm() >= 1e-4);
    }
}
