//! Real roots of real cubic polynomials.

use crate::error::{Pi2Error, Result};

fn horner(a3: f64, a2: f64, a1: f64, a0: f64, r: f64) -> (f64, f64) {
    let p = ((a3 * r + a2) * r + a1) * r + a0;
    let dp = (3.0 * a3 * r + 2.0 * a2) * r + a1;
    (p, dp)
}

/// Two Newton steps, each kept only if it does not increase the residual.
fn polish(a3: f64, a2: f64, a1: f64, a0: f64, mut r: f64) -> f64 {
    for _ in 0..2 {
        let (p, dp) = horner(a3, a2, a1, a0, r);
        if p == 0.0 || dp == 0.0 {
            break;
        }
        let cand = r - p / dp;
        let (pc, _) = horner(a3, a2, a1, a0, cand);
        if pc.abs() <= p.abs() {
            r = cand;
        } else {
            break;
        }
    }
    r
}

/// Discriminant of `a3 r^3 + a2 r^2 + a1 r + a0`. Positive for three distinct
/// real roots, negative for one real root and a complex pair.
pub fn cubic_discriminant(a3: f64, a2: f64, a1: f64, a0: f64) -> f64 {
    18.0 * a3 * a2 * a1 * a0 - 4.0 * a2.powi(3) * a0 + a2 * a2 * a1 * a1
        - 4.0 * a3 * a1.powi(3)
        - 27.0 * a3 * a3 * a0 * a0
}

/// All real roots of `a3 r^3 + a2 r^2 + a1 r + a0`, sorted increasingly.
///
/// Cardano's formulas classify the root structure; each root is then
/// polished by Newton on the original polynomial. A repeated root is
/// reported once per multiplicity it was resolved to.
pub fn cubic_real_roots(a3: f64, a2: f64, a1: f64, a0: f64) -> Result<Vec<f64>> {
    if a3 == 0.0 || !a3.is_finite() {
        return Err(Pi2Error::NotACubic);
    }
    let (b, c, d) = (a2 / a3, a1 / a3, a0 / a3);
    // Depressed cubic t^3 + p t + q with r = t - b/3.
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;

    let scale = (half_q * half_q).max(third_p.abs().powi(3)).max(f64::MIN_POSITIVE);
    let mut roots = if disc.abs() <= 1e-14 * scale {
        if p == 0.0 && q == 0.0 {
            vec![0.0]
        } else {
            // Double root -3q/(2p) and simple root 3q/p.
            let u = (-half_q).cbrt();
            vec![2.0 * u, -u]
        }
    } else if disc > 0.0 {
        let s = disc.sqrt();
        // Pick the sign that avoids cancellation, then recover the partner
        // from u v = -p/3.
        let u = (-half_q - half_q.signum() * s).cbrt();
        let u = if half_q == 0.0 { s.cbrt() } else { u };
        let v = if u != 0.0 { -third_p / u } else { 0.0 };
        vec![u + v]
    } else {
        let m = 2.0 * (-third_p).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos())
            .collect()
    };

    for r in roots.iter_mut() {
        *r = polish(a3, a2, a1, a0, *r - shift);
    }
    roots.sort_by(|x, y| x.total_cmp(y));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: [f64; 4], r: f64) -> f64 {
        horner(a[0], a[1], a[2], a[3], r).0.abs()
    }

    #[test]
    fn pure_cube() {
        let r = cubic_real_roots(1.0, 0.0, 0.0, 48.0).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] + 3.634_241_185_664_279).abs() < 1e-14);
        assert!((r[0] + 2.0 * 6f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn triple_root_at_origin() {
        assert_eq!(cubic_real_roots(1.0, 0.0, 0.0, 0.0).unwrap(), vec![0.0]);
    }

    #[test]
    fn z0_cubic_at_large_x() {
        // r^3 - 24 T |x|^{-2/3} r + 48 with x = 1e6, T = 1.
        let a1 = -24.0 * 1e6f64.powf(-2.0 / 3.0);
        let r = cubic_real_roots(1.0, 0.0, a1, 48.0).unwrap();
        assert_eq!(r.len(), 1);
        let expect = -2.0 * 6f64.cbrt() - (2.0 / 3.0) * 6f64.powf(2.0 / 3.0) * 1e-4;
        // The two-term expansion is off by O(1e-8).
        assert!((r[0] - expect).abs() < 1e-7);
        assert!(residual([1.0, 0.0, a1, 48.0], r[0]) < 1e-12 * 48.0);
    }

    #[test]
    fn three_real_roots() {
        // (r - 1)(r - 2)(r + 3) = r^3 - 7 r + 6
        let r = cubic_real_roots(1.0, 0.0, -7.0, 6.0).unwrap();
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-13);
        }
    }

    #[test]
    fn double_root() {
        // (r - 1)^2 (r + 2) = r^3 - 3 r + 2
        let r = cubic_real_roots(1.0, 0.0, -3.0, 2.0).unwrap();
        assert!(r.iter().any(|x| (x + 2.0).abs() < 1e-12));
        assert!(r.iter().any(|x| (x - 1.0).abs() < 1e-7));
    }

    #[test]
    fn leading_zero_is_rejected() {
        assert_eq!(cubic_real_roots(0.0, 1.0, 2.0, 3.0), Err(Pi2Error::NotACubic));
    }
}
