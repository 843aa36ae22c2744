//! Dense 2x2 complex matrices.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2x2 complex matrix stored row-major.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2C {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Mat2C {
    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn from_real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self::new(a11.into(), a12.into(), a21.into(), a22.into())
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    /// Pauli matrix diag(1, -1).
    pub const fn sigma3() -> Self {
        Self::new(ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0))
    }

    pub fn diag(d1: Complex64, d2: Complex64) -> Self {
        Self::new(d1, ZERO, ZERO, d2)
    }

    /// Upper unipotent matrix [[1, s], [0, 1]].
    pub fn upper(s: Complex64) -> Self {
        Self::new(ONE, s, ZERO, ONE)
    }

    /// Lower unipotent matrix [[1, 0], [s, 1]].
    pub fn lower(s: Complex64) -> Self {
        Self::new(ONE, ZERO, s, ONE)
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a11.conj(), self.a12.conj(), self.a21.conj(), self.a22.conj())
    }

    /// Inverse via the adjugate. Returns `None` when the determinant vanishes.
    pub fn inv(&self) -> Option<Self> {
        let d = self.det();
        if d == ZERO || !d.is_finite() {
            return None;
        }
        let r = d.inv();
        Some(Self::new(self.a22 * r, -self.a12 * r, -self.a21 * r, self.a11 * r))
    }

    /// Inverse of a matrix known to have unit determinant.
    pub fn inv_unimodular(&self) -> Self {
        Self::new(self.a22, -self.a12, -self.a21, self.a11)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        (self.a11.norm_sqr() + self.a12.norm_sqr() + self.a21.norm_sqr() + self.a22.norm_sqr())
            .sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.a11
            .norm()
            .max(self.a12.norm())
            .max(self.a21.norm())
            .max(self.a22.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    /// Row `r` (0 or 1) as a pair.
    pub fn row(&self, r: usize) -> [Complex64; 2] {
        match r {
            0 => [self.a11, self.a12],
            _ => [self.a21, self.a22],
        }
    }

    pub fn from_rows(r0: [Complex64; 2], r1: [Complex64; 2]) -> Self {
        Self::new(r0[0], r0[1], r1[0], r1[1])
    }
}

/// Standard matrix product.
pub fn mat2_mul(a: &Mat2C, b: &Mat2C) -> Mat2C {
    Mat2C::new(
        a.a11 * b.a11 + a.a12 * b.a21,
        a.a11 * b.a12 + a.a12 * b.a22,
        a.a21 * b.a11 + a.a22 * b.a21,
        a.a21 * b.a12 + a.a22 * b.a22,
    )
}

impl Mul for Mat2C {
    type Output = Mat2C;
    fn mul(self, rhs: Mat2C) -> Mat2C {
        mat2_mul(&self, &rhs)
    }
}

impl Mul<Complex64> for Mat2C {
    type Output = Mat2C;
    fn mul(self, rhs: Complex64) -> Mat2C {
        self.scale(rhs)
    }
}

impl Mul<f64> for Mat2C {
    type Output = Mat2C;
    fn mul(self, rhs: f64) -> Mat2C {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Add for Mat2C {
    type Output = Mat2C;
    fn add(self, rhs: Mat2C) -> Mat2C {
        Mat2C::new(
            self.a11 + rhs.a11,
            self.a12 + rhs.a12,
            self.a21 + rhs.a21,
            self.a22 + rhs.a22,
        )
    }
}

impl AddAssign for Mat2C {
    fn add_assign(&mut self, rhs: Mat2C) {
        *self = *self + rhs;
    }
}

impl Sub for Mat2C {
    type Output = Mat2C;
    fn sub(self, rhs: Mat2C) -> Mat2C {
        Mat2C::new(
            self.a11 - rhs.a11,
            self.a12 - rhs.a12,
            self.a21 - rhs.a21,
            self.a22 - rhs.a22,
        )
    }
}

impl Neg for Mat2C {
    type Output = Mat2C;
    fn neg(self) -> Mat2C {
        Mat2C::new(-self.a11, -self.a12, -self.a21, -self.a22)
    }
}

impl fmt::Debug for Mat2C {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}
