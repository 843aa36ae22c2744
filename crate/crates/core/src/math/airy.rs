//! Airy function Ai and its derivative for complex argument.
//!
//! Three regimes:
//! * `|z| <= MACLAURIN_RADIUS`: Maclaurin series.
//! * `|z| >= ASYMPTOTIC_RADIUS`: the large-argument expansion, with the
//!   three-ray connection formula `Ai(z) = -w Ai(wz) - w^2 Ai(w^2 z)`
//!   (`w = e^{2 pi i/3}`) once `|arg z| > 2 pi/3`.
//! * in between: Taylor-series continuation of `w'' = z w` along the ray
//!   through `z`, always in the direction in which Ai is not recessive
//!   (inward from the asymptotic circle when `|arg z| <= pi/3`, outward from
//!   the origin otherwise).
//!
//! The scaled pair `Ai(z) e^{zeta}`, `Ai'(z) e^{zeta}` with
//! `zeta = (2/3) z^{3/2}` (principal branch) never overflows and is what the
//! Airy model problem consumes.

use std::f64::consts::{FRAC_PI_3, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Ai(0)
pub const AI0: f64 = 0.355_028_053_887_817_239_3;
/// Ai'(0)
pub const AIP0: f64 = -0.258_819_403_792_806_798_4;

const MACLAURIN_RADIUS: f64 = 1.5;
const ASYMPTOTIC_RADIUS: f64 = 9.5;
const STEP: f64 = 0.5;
const OVERFLOW_EXPONENT: f64 = 650.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// `(2/3) z^{3/2}` on the principal branch.
pub fn airy_zeta(z: Complex64) -> Complex64 {
    z * z.sqrt() * (2.0 / 3.0)
}

/// Ai and Ai' at `z`, represented as `(ai, ai_prime) * exp(exponent)`.
///
/// `exponent` is zero unless the unscaled values would overflow or
/// underflow, in which case it is `-zeta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AiryValue {
    pub ai: Complex64,
    pub ai_prime: Complex64,
    pub exponent: Complex64,
}

impl AiryValue {
    pub fn is_scaled(&self) -> bool {
        self.exponent != c(0.0, 0.0)
    }
}

/// Ai(z), Ai'(z) with an overflow-safe representation.
pub fn airy_eval(z: Complex64) -> AiryValue {
    let zeta = airy_zeta(z);
    if zeta.re.abs() > OVERFLOW_EXPONENT {
        let (ai, ai_prime) = airy_scaled(z);
        AiryValue { ai, ai_prime, exponent: -zeta }
    } else {
        let (ai, ai_prime) = airy(z);
        AiryValue { ai, ai_prime, exponent: c(0.0, 0.0) }
    }
}

/// Unscaled Ai(z), Ai'(z). Overflows to infinity far into the left sectors.
pub fn airy(z: Complex64) -> (Complex64, Complex64) {
    let r = z.norm();
    if r <= MACLAURIN_RADIUS {
        maclaurin(z)
    } else if r < ASYMPTOTIC_RADIUS {
        continuation(z)
    } else {
        let (a, ap) = asymptotic_scaled(z);
        let e = (-airy_zeta(z)).exp();
        (a * e, ap * e)
    }
}

/// `Ai(z) e^{zeta}`, `Ai'(z) e^{zeta}` with `zeta = (2/3) z^{3/2}` principal.
pub fn airy_scaled(z: Complex64) -> (Complex64, Complex64) {
    if z.norm() >= ASYMPTOTIC_RADIUS {
        asymptotic_scaled(z)
    } else {
        let (a, ap) = airy(z);
        let e = airy_zeta(z).exp();
        (a * e, ap * e)
    }
}

fn maclaurin(z: Complex64) -> (Complex64, Complex64) {
    // Ai = AI0 f + AIP0 g with f = sum a_k z^{3k}, g = sum b_k z^{3k+1}.
    let z3 = z * z * z;
    let mut f = c(1.0, 0.0);
    let mut fp = c(0.0, 0.0);
    let mut g = z;
    let mut gp = c(1.0, 0.0);
    let mut tf = c(1.0, 0.0); // a_k z^{3k}
    let mut tg = z; // b_k z^{3k+1}
    for k in 1..80 {
        let kf = k as f64;
        tf = tf * z3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        tg = tg * z3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        f += tf;
        g += tg;
        // d/dz z^{3k} = 3k z^{3k-1}
        let dfk = tf * (3.0 * kf) / z;
        let dgk = tg * (3.0 * kf + 1.0) / z;
        fp += dfk;
        gp += dgk;
        if tf.norm() + tg.norm() < 1e-18 * (f.norm() + g.norm()) {
            break;
        }
    }
    if z == c(0.0, 0.0) {
        return (c(AI0, 0.0), c(AIP0, 0.0));
    }
    (f * AI0 + g * AIP0, fp * AI0 + gp * AIP0)
}

/// Advance a solution of `w'' = z w` from `z0` to `z0 + h` by its Taylor series.
fn taylor_step(z0: Complex64, w: Complex64, wp: Complex64, h: Complex64) -> (Complex64, Complex64) {
    let mut a_prev = c(0.0, 0.0); // a_{n-1}
    let mut a_n = w; // a_n
    let mut a_next = wp; // a_{n+1}
    let mut hp = h; // h^{n+1}
    let mut sum = w + wp * h;
    let mut dsum = wp;
    let mut last = f64::INFINITY;
    for n in 0..200usize {
        let nf = n as f64;
        let a_new = (z0 * a_n + a_prev) / ((nf + 2.0) * (nf + 1.0));
        let dterm = a_new * hp * (nf + 2.0);
        hp *= h;
        let term = a_new * hp;
        sum += term;
        dsum += dterm;
        let size = term.norm() + dterm.norm();
        if size + last < 1e-18 * (sum.norm() + dsum.norm()) {
            break;
        }
        last = size;
        a_prev = a_n;
        a_n = a_next;
        a_next = a_new;
    }
    (sum, dsum)
}

fn integrate_ray(from: Complex64, to: Complex64, mut w: Complex64, mut wp: Complex64) -> (Complex64, Complex64) {
    let d = to - from;
    let n = (d.norm() / STEP).ceil().max(1.0) as usize;
    let h = d / n as f64;
    let mut z = from;
    for _ in 0..n {
        let (w1, wp1) = taylor_step(z, w, wp, h);
        w = w1;
        wp = wp1;
        z += h;
    }
    (w, wp)
}

fn continuation(z: Complex64) -> (Complex64, Complex64) {
    let theta = z.arg();
    if theta.abs() <= FRAC_PI_3 {
        let start = Complex64::from_polar(ASYMPTOTIC_RADIUS, theta);
        let (a, ap) = asymptotic_scaled(start);
        let e = (-airy_zeta(start)).exp();
        integrate_ray(start, z, a * e, ap * e)
    } else {
        integrate_ray(c(0.0, 0.0), z, c(AI0, 0.0), c(AIP0, 0.0))
    }
}

/// Direct large-argument expansion, valid for `|arg z| <= 2 pi/3`.
fn expansion_scaled(z: Complex64) -> (Complex64, Complex64) {
    let zeta = airy_zeta(z);
    let inv = zeta.inv();
    let mut u = 1.0;
    let mut sum_u = c(1.0, 0.0);
    let mut sum_v = c(1.0, 0.0);
    let mut pw = c(1.0, 0.0);
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        pw *= -inv;
        let tu = pw * u;
        let tv = pw * v;
        let size = tu.norm().max(tv.norm());
        if size > prev {
            break;
        }
        sum_u += tu;
        sum_v += tv;
        prev = size;
        if size < 1e-17 {
            break;
        }
    }
    let q = z.sqrt().sqrt(); // z^{1/4}
    let norm = 0.5 / PI.sqrt();
    (sum_u * norm / q, -sum_v * norm * q)
}

fn asymptotic_scaled(z: Complex64) -> (Complex64, Complex64) {
    if z.arg().abs() <= 2.0 * FRAC_PI_3 {
        return expansion_scaled(z);
    }
    let w = omega();
    let w2 = w * w;
    let zeta = airy_zeta(z);
    let z1 = w * z;
    let z2 = w2 * z;
    let (a1, ap1) = expansion_scaled(z1);
    let (a2, ap2) = expansion_scaled(z2);
    let e1 = (zeta - airy_zeta(z1)).exp();
    let e2 = (zeta - airy_zeta(z2)).exp();
    (
        -(w * e1 * a1) - w2 * e2 * a2,
        -(w2 * e1 * ap1) - w * e2 * ap2,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn values_at_origin() {
        let (a, ap) = airy(c(0.0, 0.0));
        assert_eq!(a, c(AI0, 0.0));
        assert_eq!(ap, c(AIP0, 0.0));
        // Standard closed forms 3^{-2/3}/Gamma(2/3), -3^{-1/3}/Gamma(1/3).
        let g23 = crate::math::gamma::gamma(2.0 / 3.0);
        let g13 = crate::math::gamma::gamma(1.0 / 3.0);
        assert!((AI0 - 3f64.powf(-2.0 / 3.0) / g23).abs() < 1e-15);
        assert!((AIP0 + 3f64.powf(-1.0 / 3.0) / g13).abs() < 1e-15);
    }

    #[test]
    fn reference_values() {
        // Tabulated values (DLMF / Abramowitz-Stegun).
        let cases = [
            (1.0, 0.135_292_416_312_881_4, -0.159_147_441_296_793_2),
            (2.0, 0.034_924_130_423_274_38, -0.053_090_384_433_653_83),
            (5.0, 1.083_444_281_360_744e-4, -2.474_138_908_684_624e-4),
            (-1.0, 0.535_560_883_292_352_6, -0.010_160_567_116_645_31),
            (-5.0, 0.350_761_009_024_114_2, 0.327_192_818_554_443_2),
            (10.0, 1.104_753_255_289_868_7e-10, -3.520_633_676_738_526e-10),
        ];
        for (x, ai, aip) in cases {
            let (a, ap) = airy(c(x, 0.0));
            assert!(rel(a, c(ai, 0.0)) < 1e-12, "Ai({x}) = {a}");
            assert!(rel(ap, c(aip, 0.0)) < 1e-12, "Ai'({x}) = {ap}");
        }
    }

    #[test]
    fn connection_identity() {
        let w = omega();
        for z in [c(1.7, 0.3), c(-4.0, 2.5), c(7.0, -8.0), c(12.0, 3.0), c(-20.0, -1.0)] {
            let s = airy(z).0 + w * airy(w * z).0 + w * w * airy(w * w * z).0;
            let scale = airy(z).0.norm() + airy(w * z).0.norm() + airy(w * w * z).0.norm();
            assert!(s.norm() < 1e-13 * scale, "z = {z}: {s}");
        }
    }

    #[test]
    fn regimes_agree_across_switchovers() {
        // Continuation vs. series/expansion at the two switch radii.
        for k in 0..24 {
            let theta = -PI + (k as f64 + 0.5) * 2.0 * PI / 24.0;
            for r in [MACLAURIN_RADIUS, ASYMPTOTIC_RADIUS] {
                let z = Complex64::from_polar(r, theta);
                let (a_c, ap_c) = continuation(z);
                let (a_s, ap_s) = if r == MACLAURIN_RADIUS {
                    maclaurin(z)
                } else {
                    let (a, ap) = asymptotic_scaled(z);
                    let e = (-airy_zeta(z)).exp();
                    (a * e, ap * e)
                };
                assert!(rel(a_c, a_s) < 1e-12, "Ai at r={r}, theta={theta}");
                assert!(rel(ap_c, ap_s) < 1e-12, "Ai' at r={r}, theta={theta}");
            }
        }
    }

    #[test]
    fn large_real_argument_matches_leading_asymptotics() {
        // At z = 9 the value is e^{-18} times the prefactor 1/(2 sqrt(pi) 9^{1/4}),
        // up to the O(1/zeta) series correction.
        let (a, _) = airy(c(9.0, 0.0));
        let lead = (-18.0f64).exp() / (2.0 * PI.sqrt() * 3f64.sqrt());
        let corr = 1.0 - (5.0 / 72.0) / 18.0;
        assert!((a.re / (lead * corr) - 1.0).abs() < 1e-3);
        // and the series route at |z| = 9 agrees with continuation to full accuracy
        let (ae, _) = expansion_scaled(c(9.0, 0.0));
        assert!(rel(a, ae * (-18.0f64).exp()) < 1e-11);
    }

    #[test]
    fn scaled_values_far_out() {
        let z = c(2000.0, 500.0);
        let v = airy_eval(z);
        assert!(v.is_scaled());
        assert!(v.ai.is_finite() && v.ai_prime.is_finite());
        // Leading behaviour of the scaled pair.
        let q = z.sqrt().sqrt();
        let lead = 0.5 / PI.sqrt() / q;
        assert!(rel(v.ai, lead) < 1e-4);
        let small = airy_eval(c(2.0, 1.0));
        assert!(!small.is_scaled());
    }
}
