//! Outer and local parametrices, the jumps of R and the matching terms.

use num_complex::Complex64;

use super::airy_model::{airy_model_m, airy_model_normalized, n_matrix};
use super::contour::{Component, ContourSet};
use crate::asymptotics::gfunc::{conformal_f, conformal_f_taylor, g_eval, GFunction};
use crate::error::{Pi2Error, Result};
use crate::math::gamma::airy_coeffs;
use crate::math::mat2::Mat2C;
use crate::math::power::{BranchedPower, CutSide};

fn quarter_u(g: &GFunction) -> BranchedPower {
    BranchedPower::principal(Complex64::new(g.z0, 0.0), 1, 4)
}

fn outer_from_quarter(q: Complex64, x: f64) -> Mat2C {
    let s = x.abs().powf(-1.0 / 12.0);
    Mat2C::diag(s / q, q / s) * n_matrix()
}

/// `P_inf = |x|^{-sigma3/12} (zeta - z0)^{-sigma3/4} N`, cut on `(-inf, z0]`.
pub fn parametrix_outer(zeta: Complex64, x: f64, g: &GFunction) -> Result<Mat2C> {
    Ok(outer_from_quarter(quarter_u(g).eval(zeta)?, x))
}

/// Boundary value of the outer parametrix on its cut.
pub fn parametrix_outer_side(zeta: Complex64, x: f64, g: &GFunction, side: CutSide) -> Result<Mat2C> {
    Ok(outer_from_quarter(quarter_u(g).eval_side(zeta, side)?, x))
}

/// `w = |x|^{7/9} f(zeta)` and `rho = (w/u)^{1/4} = |x|^{7/36} h^{1/6}`,
/// where `f = h^{2/3} u`.
fn local_variables(zeta: Complex64, x: f64, g: &GFunction) -> Result<(Complex64, Complex64)> {
    let f = conformal_f(zeta, g)?;
    let u = zeta - g.z0;
    let scale = x.abs().powf(7.0 / 9.0);
    let h = ((u * g.c1 + g.c2) * u + g.c3) * 1.5;
    let rho = h.powf(1.0 / 6.0) * x.abs().powf(7.0 / 36.0);
    Ok((f * scale, rho))
}

/// `E = |x|^{-sigma3/12} (zeta - z0)^{-sigma3/4} w^{sigma3/4}`; the quarter
/// powers combine into the analytic `(w/u)^{1/4}`.
pub fn local_prefactor(zeta: Complex64, x: f64, g: &GFunction) -> Result<Mat2C> {
    let (_, rho) = local_variables(zeta, x, g)?;
    let s = x.abs().powf(-1.0 / 12.0);
    Ok(Mat2C::diag(rho * s, 1.0 / (rho * s)))
}

/// `P = E M(|x|^{7/9} f(zeta))` inside the disk, off the local contour.
pub fn parametrix_local(zeta: Complex64, x: f64, g: &GFunction, c: &ContourSet) -> Result<Mat2C> {
    let (w, _) = local_variables(zeta, x, g)?;
    Ok(local_prefactor(zeta, x, g)? * airy_model_m(w, c.sigma)?)
}

/// `v_R - I` on the circle, `P P_inf^{-1} - I = E (M N^{-1} w^{sigma3/4} - I) E^{-1}`,
/// formed without cancellation against the identity.
pub fn circle_jump_minus_identity(zeta: Complex64, x: f64, g: &GFunction, sigma: f64) -> Result<Mat2C> {
    let (w, _) = local_variables(zeta, x, g)?;
    let e = local_prefactor(zeta, x, g)?;
    let d = airy_model_normalized(w, sigma)? - Mat2C::identity();
    Ok(e * d * Mat2C::diag(e.a22, e.a11))
}

/// Jump exponent `2 |x|^{7/6} g(zeta)`.
fn jump_exponent(zeta: Complex64, x: f64, g: &GFunction) -> Result<Complex64> {
    Ok(g_eval(zeta, g)? * (2.0 * x.abs().powf(7.0 / 6.0)))
}

/// `v_R - I` on the lens legs (`lower = true`) or on the real ray.
fn leg_jump_minus_identity(zeta: Complex64, x: f64, g: &GFunction, lower_triangular: bool) -> Result<Mat2C> {
    let p = parametrix_outer(zeta, x, g)?;
    let pinv = p.inv_unimodular();
    let e = jump_exponent(zeta, x, g)?;
    let (nil, amp) = if lower_triangular {
        (Mat2C::lower(Complex64::new(1.0, 0.0)) - Mat2C::identity(), e.exp())
    } else {
        (Mat2C::upper(Complex64::new(1.0, 0.0)) - Mat2C::identity(), (-e).exp())
    };
    Ok(p * nil * pinv * amp)
}

/// `v_R - I` at a point of the reduced contour.
pub fn jump_vr_minus_identity(zeta: Complex64, component: Component, g: &GFunction, c: &ContourSet) -> Result<Mat2C> {
    if !c.contains(zeta, component) {
        return Err(Pi2Error::Domain(format!("zeta = {zeta} is not on the {component:?} component")));
    }
    match component {
        Component::Circle => circle_jump_minus_identity(zeta, c.x, g, c.sigma),
        Component::UpperLeg | Component::LowerLeg => leg_jump_minus_identity(zeta, c.x, g, true),
        Component::RealRay => leg_jump_minus_identity(zeta, c.x, g, false),
    }
}

/// `v_R` at a point of the reduced contour.
pub fn jump_vr(zeta: Complex64, component: Component, g: &GFunction, c: &ContourSet) -> Result<Mat2C> {
    Ok(jump_vr_minus_identity(zeta, component, g, c)? + Mat2C::identity())
}

/// `||v_R - I||` on a leg, used when truncating the legs.
pub(crate) fn leg_jump_size(zeta: Complex64, component: Component, x: f64, g: &GFunction) -> Result<f64> {
    let lower = component != Component::RealRay;
    Ok(leg_jump_minus_identity(zeta, x, g, lower)?.max_abs())
}

/// First and second matching terms, `Delta_1` and `Delta_2`, at `zeta`.
pub fn delta_terms(zeta: Complex64, g: &GFunction) -> Result<(Mat2C, Mat2C)> {
    let f = conformal_f(zeta, g)?;
    let u = zeta - g.z0;
    let ratio_half = (u / f).sqrt();
    let c1 = airy_coeffs(1)?;
    let zero = Complex64::new(0.0, 0.0);
    let d1 = Mat2C::new(zero, zero, ratio_half / f * c1.t_k, zero);
    let d2 = Mat2C::new(zero, c1.s_k / (f * f * ratio_half), zero, zero);
    Ok((d1, d2))
}

/// Residues at z0 of the two matching terms, from the Taylor data
/// `f = q0 u + q1 u^2 + ...`.
pub fn delta_residues(g: &GFunction) -> Result<(Mat2C, Mat2C)> {
    let (q0, q1) = conformal_f_taylor(g);
    if q0 <= 0.0 {
        return Err(Pi2Error::NotConformal(format!("f'(z0) = {q0}")));
    }
    let c1 = airy_coeffs(1)?;
    let r1 = Mat2C::from_real(0.0, 0.0, c1.t_k * q0.powf(-1.5), 0.0);
    let r2 = Mat2C::from_real(0.0, -1.5 * c1.s_k * q1 * q0.powf(-2.5), 0.0, 0.0);
    Ok((r1, r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::gfunc::solve_z0;
    use crate::rh::contour::{build_contour, RhConfig};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn outer_parametrix_basics() {
        let g = solve_z0(1.0, 0.0).unwrap();
        let zeta = c(g.z0 + 1.0, 0.0);
        let p = parametrix_outer(zeta, 1.0, &g).unwrap();
        assert!((p - n_matrix()).max_abs() < 1e-15);
        let g = solve_z0(50.0, 0.7).unwrap();
        for z in [c(0.3, 2.0), c(-7.0, -0.1), c(4.0, 0.0)] {
            assert!((parametrix_outer(z, 50.0, &g).unwrap().det() - 1.0).norm() < 1e-13);
        }
        let z = c(g.z0 - 1.0, 0.0);
        assert!(parametrix_outer(z, 50.0, &g).is_err());
        let pp = parametrix_outer_side(z, 50.0, &g, CutSide::Plus).unwrap();
        let pm = parametrix_outer_side(z, 50.0, &g, CutSide::Minus).unwrap();
        assert!((pp - pm * Mat2C::from_real(0.0, 1.0, -1.0, 0.0)).max_abs() < 1e-14);
    }

    #[test]
    fn residue_structure_and_value() {
        let g = solve_z0(100.0, 0.0).unwrap();
        let (r1, r2) = delta_residues(&g).unwrap();
        assert_eq!([r1.a11, r1.a12, r1.a22], [c(0.0, 0.0); 3]);
        assert_eq!([r2.a11, r2.a21, r2.a22], [c(0.0, 0.0); 3]);
        // f'(z0) = (1.5 * 6^{-1/3})^{2/3} at T = 0
        let q0 = (1.5 * 6f64.powf(-1.0 / 3.0)).powf(2.0 / 3.0);
        assert!((r1.a21.re - (-7.0 / 48.0) * q0.powf(-1.5)).abs() < 1e-14);
        assert!((r1.a21.re + 0.176_664_502).abs() < 1e-8);
    }

    #[test]
    fn residues_match_contour_integrals() {
        // clockwise circle: -(1/2 pi i) oint_cw = +(1/2 pi i) oint_ccw
        for (x, t) in [(100.0, 0.0), (-60.0, 1.0), (300.0, -2.0)] {
            let g = solve_z0(x, t).unwrap();
            let (r1, r2) = delta_residues(&g).unwrap();
            let n = 256;
            let (mut s1, mut s2) = (Mat2C::zero(), Mat2C::zero());
            for j in 0..n {
                let th = (j as f64 + 0.5) * 2.0 * PI / n as f64;
                let e = Complex64::from_polar(0.5, th);
                let ds = c(0.0, 1.0) * e * (2.0 * PI / n as f64);
                let (d1, d2) = delta_terms(c(g.z0, 0.0) + e, &g).unwrap();
                s1 += d1 * ds;
                s2 += d2 * ds;
            }
            let k = 1.0 / (2.0 * PI);
            let i = c(0.0, -1.0);
            assert!((s1 * (i * k) - r1).max_abs() < 1e-12, "x = {x}");
            assert!((s2 * (i * k) - r2).max_abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn local_parametrix_is_unimodular_and_prefactor_analytic() {
        let (x, t) = (100.0, 0.0);
        let g = solve_z0(x, t).unwrap();
        let cs = build_contour(x, t, &RhConfig::default()).unwrap();
        for k in 0..20 {
            let z = c(cs.center, 0.0) + Complex64::from_polar(0.05 + 0.04 * k as f64, 0.3 + 0.29 * k as f64);
            let p = parametrix_local(z, x, &g, &cs).unwrap();
            assert!((p.det() - 1.0).norm() < 1e-11, "{z}");
        }
        // winding of E around z0 vanishes: oint E' E^{-1} = 0
        let n = 64;
        let h = 1e-5;
        let mut acc = Mat2C::zero();
        for j in 0..n {
            let th = (j as f64 + 0.5) * 2.0 * PI / n as f64;
            let e = Complex64::from_polar(0.8, th);
            let z = c(cs.center, 0.0) + e;
            let dz = c(h, 0.0);
            let de = (local_prefactor(z + dz, x, &g).unwrap() - local_prefactor(z - dz, x, &g).unwrap()) * (0.5 / h);
            let einv = local_prefactor(z, x, &g).unwrap().inv_unimodular();
            acc += de * einv * (c(0.0, 1.0) * e * (2.0 * PI / n as f64));
        }
        assert!(acc.max_abs() < 1e-8, "{acc:?}");
    }
}
