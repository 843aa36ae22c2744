//! Gamma function and the Airy asymptotic coefficients built from it.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Pi2Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (z - 1).
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (x + (i + 1) as f64))
}

/// Gamma function for real arguments (reflection below 1/2).
pub fn gamma(z: f64) -> f64 {
    if z < 0.5 {
        return PI / ((PI * z).sin() * gamma(1.0 - z));
    }
    let x = z - 1.0;
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * lanczos_sum(x)
}

/// Natural log of |Gamma(z)| for z > 0.
pub fn ln_gamma(z: f64) -> f64 {
    if z < 0.5 {
        return (PI / (PI * z).sin().abs()).ln() - ln_gamma(1.0 - z);
    }
    let x = z - 1.0;
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

/// The pair `(s_k, t_k)` appearing in the large-argument expansion of the
/// Airy model problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AiryCoeffs {
    pub k: u32,
    pub s_k: f64,
    pub t_k: f64,
}

/// `s_k = Gamma(3k + 1/2) / (36^k k! Gamma(k + 1/2))`,
/// `t_k = -(6k + 1)/(6k - 1) s_k`.
pub fn airy_coeffs(k: i64) -> Result<AiryCoeffs> {
    if k <= 0 {
        return Err(Pi2Error::Domain(format!("airy_coeffs needs k >= 1, got {k}")));
    }
    let kf = k as f64;
    let s_k = if k <= 40 {
        gamma(3.0 * kf + 0.5) / (36f64.powi(k as i32) * gamma(kf + 1.0) * gamma(kf + 0.5))
    } else {
        (ln_gamma(3.0 * kf + 0.5) - kf * 36f64.ln() - ln_gamma(kf + 1.0) - ln_gamma(kf + 0.5)).exp()
    };
    let t_k = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * s_k;
    Ok(AiryCoeffs { k: k as u32, s_k, t_k })
}
