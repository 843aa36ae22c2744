//! Banded LU with partial pivoting.
//!
//! Row `r` stores columns `r - kl ..= r + ku + kl`; the extra `kl`
//! superdiagonals absorb fill from row interchanges.

use crate::error::{Pi2Error, Result};

#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self { n, kl, ku, width, data: vec![0.0; n * width] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, r: usize, c: usize) -> usize {
        debug_assert!(c + self.kl >= r && c <= r + self.ku + self.kl, "({r}, {c}) outside band");
        r * self.width + (c + self.kl - r)
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        if c + self.kl < r || c > r + self.ku + self.kl {
            0.0
        } else {
            self.data[self.idx(r, c)]
        }
    }

    /// Add `v` at `(r, c)`; the entry must lie in the declared band.
    pub fn add(&mut self, r: usize, c: usize, v: f64) {
        assert!(c + self.kl >= r && c <= r + self.ku, "entry ({r}, {c}) outside declared band");
        let i = self.idx(r, c);
        self.data[i] += v;
    }

    pub fn clear(&mut self) {
        self.data.iter_mut().for_each(|v| *v = 0.0);
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|r| {
                let lo = r.saturating_sub(self.kl);
                let hi = (r + self.ku + self.kl).min(self.n - 1);
                (lo..=hi).map(|c| self.get(r, c) * x[c]).sum()
            })
            .collect()
    }

    /// Factor in place.
    pub fn factor(mut self) -> Result<BandLu> {
        let n = self.n;
        let mut piv = vec![0usize; n];
        let span = self.kl + self.ku;
        for k in 0..n {
            let last = (k + self.kl).min(n - 1);
            let mut p = k;
            let mut best = self.get(k, k).abs();
            for r in k + 1..=last {
                let v = self.get(r, k).abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return Err(Pi2Error::Singular);
            }
            piv[k] = p;
            let cmax = (k + span).min(n - 1);
            if p != k {
                for c in k..=cmax {
                    let (a, b) = (self.idx(k, c), self.idx(p, c));
                    self.data.swap(a, b);
                }
            }
            let d = self.get(k, k);
            for r in k + 1..=last {
                let ir = self.idx(r, k);
                let m = self.data[ir] / d;
                self.data[ir] = m;
                if m != 0.0 {
                    for c in k + 1..=cmax {
                        let a = self.idx(k, c);
                        let b = self.idx(r, c);
                        self.data[b] -= m * self.data[a];
                    }
                }
            }
        }
        Ok(BandLu { m: self, piv })
    }
}

#[derive(Debug, Clone)]
pub struct BandLu {
    m: BandMatrix,
    piv: Vec<usize>,
}

impl BandLu {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.m.n;
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.piv[k]);
            let last = (k + self.m.kl).min(n - 1);
            for r in k + 1..=last {
                x[r] -= self.m.get(r, k) * x[k];
            }
        }
        let span = self.m.kl + self.m.ku;
        for k in (0..n).rev() {
            let cmax = (k + span).min(n - 1);
            let mut s = x[k];
            for c in k + 1..=cmax {
                s -= self.m.get(k, c) * x[c];
            }
            x[k] = s / self.m.get(k, k);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn solves_random_banded_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (n, kl, ku) = (60, 5, 3);
        let mut a = BandMatrix::zeros(n, kl, ku);
        for r in 0..n {
            for c in r.saturating_sub(kl)..=(r + ku).min(n - 1) {
                // weak diagonal forces pivoting
                let v: f64 = rng.random_range(-1.0..1.0);
                a.add(r, c, if r == c { 0.01 * v } else { v });
            }
        }
        let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
        let b = a.mul_vec(&x);
        let lu = a.clone().factor().unwrap();
        let got = lu.solve(&b);
        let err = got.iter().zip(&x).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        assert!(err < 1e-9, "err = {err}");
    }

    #[test]
    fn singular_is_reported() {
        let a = BandMatrix::zeros(4, 1, 1);
        assert!(matches!(a.factor(), Err(Pi2Error::Singular)));
    }
}
