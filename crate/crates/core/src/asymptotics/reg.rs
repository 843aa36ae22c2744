//! Sign structure of Re g around z0.
//!
//! Along a ray `z0 + r e^{i phi}` the normalized quantity
//! `r^{-7/2} Re g = A + B s + C s^2` is a quadratic in `s = 1/r`, with
//! `A = c1 cos(7 phi/2)`, `B = c2 cos(5 phi/2)`, `C = c3 cos(3 phi/2)`.
//! Extremes over all `r > 0` are therefore available in closed form.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gfunc::{g_eval, g_eval_side, GFunction};
use crate::math::power::CutSide;

/// Angular step of the epsilon_0 search.
pub const EPS0_STEP: f64 = PI / 140.0;

/// Direction of the upper lens ray.
pub const LENS_ANGLE: f64 = 6.0 * PI / 7.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReGSample {
    pub angle: f64,
    pub radius: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReGBoundsReport {
    pub c_lower: f64,
    pub eps0: f64,
    pub x_threshold: f64,
    pub samples: Vec<ReGSample>,
}

fn ray_coeffs(g: &GFunction, phi: f64) -> (f64, f64, f64) {
    (
        g.c1 * (3.5 * phi).cos(),
        g.c2 * (2.5 * phi).cos(),
        g.c3 * (1.5 * phi).cos(),
    )
}

/// `r^{-7/2} Re g(z0 + r e^{i phi})`. At `phi = pi` the upper boundary value.
pub fn normalized_re_g(g: &GFunction, r: f64, phi: f64) -> f64 {
    let zeta = Complex64::new(g.z0, 0.0) + Complex64::from_polar(r, phi);
    let v = if (phi.abs() - PI).abs() < 1e-15 {
        g_eval_side(Complex64::new(g.z0 - r, 0.0), g, CutSide::Plus)
    } else {
        g_eval(zeta, g)
    };
    v.map(|v| v.re * r.powf(-3.5)).unwrap_or(f64::NAN)
}

/// Infimum over `r > 0` of `r^{-7/2} Re g` along the ray at angle `phi`.
/// Returns `-inf` when the quadratic is unbounded below.
pub fn ray_minimum(g: &GFunction, phi: f64) -> f64 {
    let (a, b, c) = ray_coeffs(g, phi);
    if c < 0.0 {
        return f64::NEG_INFINITY;
    }
    if c > 0.0 && b < 0.0 {
        a - b * b / (4.0 * c)
    } else {
        // monotone on s > 0: infimum at s -> 0 or s -> inf
        if c == 0.0 && b < 0.0 {
            f64::NEG_INFINITY
        } else {
            a
        }
    }
}

/// Supremum over `r > 0` of `r^{-7/2} Re g` along the ray at angle `phi`.
pub fn ray_maximum(g: &GFunction, phi: f64) -> f64 {
    let (a, b, c) = ray_coeffs(g, phi);
    if c > 0.0 {
        return f64::INFINITY;
    }
    if c < 0.0 && b > 0.0 {
        a - b * b / (4.0 * c)
    } else if c == 0.0 && b > 0.0 {
        f64::INFINITY
    } else {
        a
    }
}

/// Largest multiple of [`EPS0_STEP`] such that every ray in
/// `6 pi/7 +- eps` has `r^{-7/2} Re g <= -margin` for all `r > 0`.
/// Returns `None` if even the central ray fails.
pub fn measure_eps0(g: &GFunction, margin: f64) -> Option<f64> {
    if ray_maximum(g, LENS_ANGLE) > -margin {
        return None;
    }
    let mut k = 0u32;
    // the upper lens ray must stay inside (pi/3, pi)
    while LENS_ANGLE + (k + 1) as f64 * EPS0_STEP < PI {
        let e = (k + 1) as f64 * EPS0_STEP;
        if ray_maximum(g, LENS_ANGLE + e) > -margin || ray_maximum(g, LENS_ANGLE - e) > -margin {
            break;
        }
        k += 1;
    }
    Some(k as f64 * EPS0_STEP)
}

/// Sample `r^{-7/2} Re g(z0 + r e^{i phi})` and measure the bounds.
///
/// `c_lower` is the smaller of the minimum on the positive ray and the
/// negated maximum inside the validated window, both over all `r > 0`
/// (closed form) and over the stored samples.
pub fn re_g_scan(g: &GFunction, radii: &[f64], angles: &[f64]) -> ReGBoundsReport {
    let mut samples = Vec::with_capacity(radii.len() * angles.len());
    for &phi in angles {
        for &r in radii {
            if r > 0.0 {
                samples.push(ReGSample { angle: phi, radius: r, value: normalized_re_g(g, r, phi) });
            }
        }
    }
    let eps0 = measure_eps0(g, 0.0).unwrap_or(0.0);
    let positive = ray_minimum(g, 0.0);
    let mut window = ray_maximum(g, LENS_ANGLE);
    let mut k = 1;
    while k as f64 * EPS0_STEP <= eps0 + 1e-15 {
        let e = k as f64 * EPS0_STEP;
        window = window.max(ray_maximum(g, LENS_ANGLE + e)).max(ray_maximum(g, LENS_ANGLE - e));
        k += 1;
    }
    let mut c_lower = positive.min(-window);
    for s in &samples {
        if s.angle == 0.0 {
            c_lower = c_lower.min(s.value);
        } else if (s.angle - LENS_ANGLE).abs() <= eps0 {
            c_lower = c_lower.min(-s.value);
        }
    }
    ReGBoundsReport { c_lower, eps0, x_threshold: g.x.abs(), samples }
}

impl ReGBoundsReport {
    /// CSV with header `angle,radius,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("angle,radius,value\n");
        for s in &self.samples {
            let _ = writeln!(out, "{:.17e},{:.17e},{:.17e}", s.angle, s.radius, s.value);
        }
        out
    }
}
