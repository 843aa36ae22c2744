//! Fractional powers with an explicit branch cut.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Pi2Error, Result};

/// Rational exponent `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponent {
    pub num: i32,
    pub den: i32,
}

impl Exponent {
    pub fn new(num: i32, den: i32) -> Self {
        assert!(den != 0, "exponent denominator must be nonzero");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd(num.unsigned_abs(), den as u32).max(1) as i32;
        Self { num: num / g, den: den / g }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn on_cut(theta: f64) -> bool {
    PI - theta.abs() < 4.0 * f64::EPSILON
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Which side of a cut a boundary value is taken from. `Plus` is reached by
/// rotating counterclockwise towards the cut ray (from above for the
/// standard cut along the negative axis).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CutSide {
    Plus,
    Minus,
}

/// `(zeta - base_point)^exponent` with its cut along the ray
/// `base_point + t e^{i cut_direction}`, `t >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchedPower {
    pub base_point: Complex64,
    pub exponent: Exponent,
    pub cut_direction: f64,
}

impl BranchedPower {
    pub fn new(base_point: Complex64, exponent: Exponent, cut_direction: f64) -> Self {
        Self { base_point, exponent, cut_direction }
    }

    /// Principal branch: cut along `(-inf, base_point]`.
    pub fn principal(base_point: Complex64, num: i32, den: i32) -> Self {
        Self::new(base_point, Exponent::new(num, den), PI)
    }

    /// Angle of `zeta - base_point` measured so that the cut sits at `+-pi`,
    /// shifted back by the cut rotation. `None` at the base point.
    fn rotated_arg(&self, zeta: Complex64) -> Option<(f64, f64)> {
        let d = zeta - self.base_point;
        let r = d.norm();
        if r == 0.0 {
            return None;
        }
        let rot = Complex64::from_polar(1.0, PI - self.cut_direction);
        Some((r, (d * rot).arg()))
    }

    fn assemble(&self, r: f64, theta: f64) -> Complex64 {
        let e = self.exponent.value();
        Complex64::from_polar(r.powf(e), e * (theta + self.cut_direction - PI))
    }

    fn at_base(&self) -> Result<Complex64> {
        if self.exponent.num > 0 {
            Ok(Complex64::new(0.0, 0.0))
        } else if self.exponent.num == 0 {
            Ok(Complex64::new(1.0, 0.0))
        } else {
            Err(Pi2Error::Domain("negative power at the branch point".into()))
        }
    }

    /// Value off the cut. Points exactly on the cut are rejected; use
    /// [`BranchedPower::eval_side`] for boundary values there.
    pub fn eval(&self, zeta: Complex64) -> Result<Complex64> {
        match self.rotated_arg(zeta) {
            None => self.at_base(),
            Some((_, theta)) if on_cut(theta) => Err(Pi2Error::OnBranchCut(format!(
                "zeta = {zeta} lies on the cut of a power based at {}",
                self.base_point
            ))),
            Some((r, theta)) => Ok(self.assemble(r, theta)),
        }
    }

    /// Boundary value from the given side. Off the cut this agrees with
    /// [`BranchedPower::eval`].
    pub fn eval_side(&self, zeta: Complex64, side: CutSide) -> Result<Complex64> {
        match self.rotated_arg(zeta) {
            None => self.at_base(),
            Some((r, theta)) => {
                let theta = match (on_cut(theta), side) {
                    (true, CutSide::Plus) => PI,
                    (true, CutSide::Minus) => -PI,
                    _ => theta,
                };
                Ok(self.assemble(r, theta))
            }
        }
    }
}

/// Evaluate `p` at `zeta`; errors on the cut.
pub fn branched_power_eval(p: &BranchedPower, zeta: Complex64) -> Result<Complex64> {
    p.eval(zeta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn square_root_on_positive_axis() {
        let p = BranchedPower::principal(Complex64::new(0.0, 0.0), 1, 2);
        assert!(close(p.eval(Complex64::new(4.0, 0.0)).unwrap(), Complex64::new(2.0, 0.0), 1e-15));
    }

    #[test]
    fn square_root_side_limits() {
        let p = BranchedPower::principal(Complex64::new(0.0, 0.0), 1, 2);
        let m1 = Complex64::new(-1.0, 0.0);
        assert!(matches!(p.eval(m1), Err(Pi2Error::OnBranchCut(_))));
        let up = p.eval_side(m1, CutSide::Plus).unwrap();
        let dn = p.eval_side(m1, CutSide::Minus).unwrap();
        assert!(close(up, Complex64::new(0.0, 1.0), 1e-15));
        assert!(close(dn, Complex64::new(0.0, -1.0), 1e-15));
        // Limits from slightly off the cut agree with the side values.
        assert!(close(p.eval(Complex64::new(-1.0, 1e-14)).unwrap(), up, 1e-13));
        assert!(close(p.eval(Complex64::new(-1.0, -1e-14)).unwrap(), dn, 1e-13));
    }

    #[test]
    fn unit_offset_gives_one() {
        let z0 = Complex64::new(-3.634241, 0.0);
        let p = BranchedPower::principal(z0, 7, 2);
        let v = p.eval(z0 + 1.0).unwrap();
        assert!(close(v, Complex64::new(1.0, 0.0), 1e-14));
    }

    #[test]
    fn rotated_cut_is_continuous_across_negative_axis() {
        // Cut pointing straight down: the negative real axis is now ordinary.
        let p = BranchedPower::new(Complex64::new(0.0, 0.0), Exponent::new(1, 3), -PI / 2.0);
        let a = p.eval(Complex64::new(-2.0, 1e-12)).unwrap();
        let b = p.eval(Complex64::new(-2.0, -1e-12)).unwrap();
        assert!(close(a, b, 1e-10));
        assert!(p.eval(Complex64::new(0.0, -3.0)).is_err());
    }

    #[test]
    fn base_point_values() {
        let z0 = Complex64::new(1.0, 1.0);
        assert_eq!(BranchedPower::principal(z0, 3, 2).eval(z0).unwrap(), Complex64::new(0.0, 0.0));
        assert!(BranchedPower::principal(z0, -1, 4).eval(z0).is_err());
    }
}
