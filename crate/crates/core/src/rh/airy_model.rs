//! The Airy model problem M on four rays `arg w = 0, sigma, pi, -sigma`.
//!
//! With `phi = (2/3) w^{3/2}` and `omega = e^{2 pi i/3}`,
//! `M = sqrt(2 pi) e^{-i pi/12} Psi(w) e^{phi sigma3}` where `Psi` is built from
//! `Ai(w)`, `Ai(omega w)`, `Ai(omega^2 w)` sector by sector. Everything is
//! evaluated in exponentially scaled form so large `|w|` never overflows.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Pi2Error, Result};
use crate::math::airy::{airy_scaled, airy_zeta};
use crate::math::mat2::Mat2C;
use crate::math::power::CutSide;

/// Sectors cut out by the four rays, counterclockwise from the positive axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// `0 < arg w < sigma`
    I,
    /// `sigma < arg w < pi`
    II,
    /// `-pi < arg w < -sigma`
    III,
    /// `-sigma < arg w < 0`
    IV,
}

fn cis(a: f64) -> Complex64 {
    Complex64::from_polar(1.0, a)
}

/// `N = (1/sqrt 2) [[1, 1], [-1, 1]] e^{-i pi sigma3/4}`.
pub fn n_matrix() -> Mat2C {
    let (a, b) = (cis(-PI / 4.0) * FRAC_1_SQRT_2, cis(PI / 4.0) * FRAC_1_SQRT_2);
    Mat2C::new(a, b, -a, b)
}

/// Sector of `w`; `None` on a ray or at the origin.
pub fn sector(w: Complex64, sigma: f64) -> Option<Sector> {
    if w.norm() == 0.0 {
        return None;
    }
    let a = w.arg();
    let s = if a == 0.0 || a == sigma || a == -sigma || a.abs() == PI {
        return None;
    } else if a > sigma {
        Sector::II
    } else if a > 0.0 {
        Sector::I
    } else if a > -sigma {
        Sector::IV
    } else {
        Sector::III
    };
    Some(s)
}

/// Sector on the given side of the ray through `w`. Rays are oriented
/// towards the right, so the `+` side lies counterclockwise of rays 1 and 3
/// and clockwise of rays 2 and 4.
fn sector_on_ray(w: Complex64, sigma: f64, side: CutSide) -> Result<(Sector, f64)> {
    let a = w.arg();
    let plus = side == CutSide::Plus;
    let tol = 1e-12;
    let pick = if a.abs() <= tol {
        (if plus { Sector::I } else { Sector::IV }, 0.0)
    } else if (a - sigma).abs() <= tol {
        (if plus { Sector::I } else { Sector::II }, sigma)
    } else if (a + sigma).abs() <= tol {
        (if plus { Sector::III } else { Sector::IV }, -sigma)
    } else if PI - a.abs() <= tol {
        if plus {
            (Sector::II, PI)
        } else {
            (Sector::III, -PI)
        }
    } else {
        return Err(Pi2Error::Domain(format!("w = {w} is not on a ray of the model contour")));
    };
    Ok(pick)
}

/// `(Ai(z), Ai'(z)) e^{target}`; exact as long as `target` differs from the
/// principal `(2/3) z^{3/2}` only by a branch choice.
fn ai_times(z: Complex64, target: Complex64) -> (Complex64, Complex64) {
    let (a, ap) = airy_scaled(z);
    let e = (target - airy_zeta(z)).exp();
    (a * e, ap * e)
}

/// `M(w)` for `w = r e^{i arg}` inside (the closure of) `sector`.
fn m_polar(r: f64, arg: f64, s: Sector) -> Mat2C {
    let w = Complex64::from_polar(r, arg);
    let phi = Complex64::from_polar(r.powf(1.5), 1.5 * arg) * (2.0 / 3.0);
    let omega = cis(2.0 * PI / 3.0);
    let (e_m, e_p) = (cis(-PI / 6.0), cis(PI / 6.0));
    let (a1, a1p) = ai_times(w, phi);
    let col1 = [a1 * e_m, a1p * e_m];
    let upper = matches!(s, Sector::I | Sector::II);
    let col2 = if upper {
        let w2 = omega * omega;
        let (a, ap) = ai_times(w2 * w, -phi);
        [a * e_p, w2 * ap * e_p]
    } else {
        let (a, ap) = ai_times(omega * w, -phi);
        [-(omega * omega) * a * e_p, -ap * e_p]
    };
    let e2 = (phi * 2.0).exp();
    let col1 = match s {
        Sector::I | Sector::IV => col1,
        Sector::II => [col1[0] - e2 * col2[0], col1[1] - e2 * col2[1]],
        Sector::III => [col1[0] + e2 * col2[0], col1[1] + e2 * col2[1]],
    };
    let k = cis(-PI / 12.0) * (2.0 * PI).sqrt();
    Mat2C::new(col1[0] * k, col2[0] * k, col1[1] * k, col2[1] * k)
}

/// `M(w)` off the rays.
pub fn airy_model_m(w: Complex64, sigma: f64) -> Result<Mat2C> {
    check_sigma(sigma)?;
    let s = sector(w, sigma).ok_or_else(|| {
        Pi2Error::Domain(format!("w = {w} lies on the model contour; give a side"))
    })?;
    Ok(m_polar(w.norm(), w.arg(), s))
}

/// Boundary value of `M` on a ray from the given side (off the rays this
/// is just [`airy_model_m`]).
pub fn airy_model_m_side(w: Complex64, sigma: f64, side: CutSide) -> Result<Mat2C> {
    check_sigma(sigma)?;
    if let Some(s) = sector(w, sigma) {
        return Ok(m_polar(w.norm(), w.arg(), s));
    }
    if w.norm() == 0.0 {
        return Err(Pi2Error::Domain("M is not defined at the origin as a boundary value".into()));
    }
    let (s, arg) = sector_on_ray(w, sigma, side)?;
    Ok(m_polar(w.norm(), arg, s))
}

/// `M(w) N^{-1} w^{sigma3/4} = I + B1/w + ...` with principal `w^{1/4}`.
pub fn airy_model_normalized(w: Complex64, sigma: f64) -> Result<Mat2C> {
    let m = airy_model_m(w, sigma)?;
    let q = w.powf(0.25);
    Ok(m * n_matrix().inv_unimodular() * Mat2C::diag(q, q.inv()))
}

/// Jump of M on the ray through `w`, for checks.
pub fn airy_model_jump(w: Complex64, sigma: f64) -> Result<Mat2C> {
    let a = w.arg();
    let phi = airy_zeta(w) * 2.0;
    let tol = 1e-12;
    if a.abs() <= tol {
        Ok(Mat2C::upper((-phi).exp()))
    } else if (a.abs() - sigma).abs() <= tol {
        Ok(Mat2C::lower(phi.exp()))
    } else if PI - a.abs() <= tol {
        Ok(Mat2C::from_real(0.0, 1.0, -1.0, 0.0))
    } else {
        Err(Pi2Error::Domain(format!("w = {w} is not on a ray of the model contour")))
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > PI / 3.0 && sigma < PI {
        Ok(())
    } else {
        Err(Pi2Error::Domain(format!("sigma = {sigma} outside (pi/3, pi)")))
    }
}
