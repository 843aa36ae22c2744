//! Discrete Cauchy operator `C_-` on the reduced contour.
//!
//! The circle carries a trigonometric interpolant: on the circle `C_-` is
//! minus the projection onto non-negative Fourier modes (clockwise
//! orientation, interior boundary value) and off the circle it sums the
//! negative modes. Straight leg panels use Legendre product integration
//! for targets inside the Bernstein ellipse `|tau-1| + |tau+1| < 4` and plain
//! Gauss-Legendre quadrature elsewhere.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::contour::{ContourSet, Panel};
use crate::math::quadrature::legendre_values;

/// `q_n(tau) = int_{-1}^{1} P_n(t)/(t - tau) dt` for `n < count`. With
/// `on_panel = Some(a)` the target is `tau = a` on the segment and the
/// minus (right-hand) boundary value is returned.
pub fn legendre_cauchy_moments(count: usize, tau: Complex64, on_panel: Option<f64>) -> Vec<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let q0 = match on_panel {
        Some(a) => Complex64::new(((1.0 - a) / (1.0 + a)).ln(), -PI),
        None => (tau - one).ln() - (tau + one).ln(),
    };
    let tau = on_panel.map_or(tau, |a| Complex64::new(a, 0.0));
    let mut q = Vec::with_capacity(count);
    q.push(q0);
    if count > 1 {
        q.push(tau * q0 + 2.0);
    }
    for k in 1..count.saturating_sub(1) {
        let kf = k as f64;
        let next = (tau * q[k] * (2.0 * kf + 1.0) - q[k - 1] * kf) / (kf + 1.0);
        q.push(next);
    }
    q
}

/// Weights `c_k` with `(1/2 pi i) int_panel phi(s)/(s - z) ds ~ sum_k c_k phi(s_k)`.
pub fn panel_weights(panel: &Panel, z: Complex64, on_panel: Option<usize>) -> Vec<Complex64> {
    let n = panel.t.len();
    let inv2pii = Complex64::new(0.0, -1.0 / (2.0 * PI));
    let tau = panel.tau(z);
    let near = on_panel.is_some() || (tau - 1.0).norm() + (tau + 1.0).norm() < 4.0;
    if !near {
        return panel.nodes.iter().zip(&panel.weights).map(|(s, w)| inv2pii * w / (s - z)).collect();
    }
    let q = legendre_cauchy_moments(n, tau, on_panel.map(|i| panel.t[i]));
    (0..n)
        .map(|k| {
            let p = legendre_values(n, panel.t[k]);
            let s: Complex64 = (0..n).map(|m| q[m] * (p[m] * (2.0 * m as f64 + 1.0) * 0.5)).sum();
            inv2pii * s * panel.w[k]
        })
        .collect()
}

/// Dense `n x n` matrix of `C_-` in node order: circle nodes first, then
/// each leg panel in turn. Row-major.
pub fn cauchy_matrix(c: &ContourSet) -> Vec<Vec<Complex64>> {
    let nc = c.circle_nodes.len();
    let n = c.node_count();
    let half = nc / 2;
    let inv_n = 1.0 / nc as f64;
    let theta: Vec<f64> = (0..nc).map(|j| c.circle_angle(j)).collect();
    let center = Complex64::new(c.center, 0.0);
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    // circle-to-circle entries depend only on j - k
    let circulant: Vec<Complex64> = (0..nc)
        .map(|d| {
            let a = d as f64 * 2.0 * PI / nc as f64;
            let mut s: Complex64 = (0..half).map(|mm| Complex64::from_polar(1.0, mm as f64 * a)).sum();
            s += Complex64::from_polar(0.5, half as f64 * a);
            -s * inv_n
        })
        .collect();

    let targets: Vec<(Complex64, Option<(usize, usize)>)> = c
        .circle_nodes
        .iter()
        .map(|z| (*z, None))
        .chain(c.leg_panels.iter().enumerate().flat_map(|(p, panel)| {
            panel.nodes.iter().enumerate().map(move |(i, z)| (*z, Some((p, i))))
        }))
        .collect();

    for (row, &(z, loc)) in targets.iter().enumerate() {
        // circle sources
        match loc {
            None => {
                for k in 0..nc {
                    m[row][k] = circulant[(row + nc - k) % nc];
                }
            }
            Some(_) => {
                let winv = c.delta / (z - center);
                for k in 0..nc {
                    let base = Complex64::from_polar(1.0, theta[k]) * winv;
                    let mut pw = base;
                    let mut s = Complex64::new(0.0, 0.0);
                    for _ in 1..half {
                        s += pw;
                        pw *= base;
                    }
                    s += pw * 0.5;
                    m[row][k] = s * inv_n;
                }
            }
        }
        // panel sources
        let mut col = nc;
        for (p, panel) in c.leg_panels.iter().enumerate() {
            let on = match loc {
                Some((tp, i)) if tp == p => Some(i),
                _ => None,
            };
            for (k, wk) in panel_weights(panel, z, on).into_iter().enumerate() {
                m[row][col + k] = wk;
            }
            col += panel.nodes.len();
        }
    }
    m
}
