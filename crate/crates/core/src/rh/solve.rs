//! The small-norm problem for R, its first moment and the extraction of y.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cauchy::cauchy_matrix;
use super::contour::{build_contour, Component, ContourSet, RhConfig};
use super::parametrix::jump_vr_minus_identity;
use crate::asymptotics::gfunc::{solve_z0, GFunction};
use crate::error::{Pi2Error, Result};
use crate::math::mat2::Mat2C;

/// Condition number above which the dense solve refuses to answer.
pub const MAX_CONDITION: f64 = 1e12;

/// First moment of R, `R = I + R1/zeta + O(zeta^{-2})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RMoments {
    #[serde(rename = "R1")]
    pub r1: Mat2C,
    pub x: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub neumann_order: usize,
    pub est_error: f64,
    pub dense: bool,
}

/// Per-evaluation diagnostic record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhDump {
    pub x: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub sigma: f64,
    pub delta: f64,
    pub panel_count: usize,
    pub max_jump_deviation: f64,
    #[serde(rename = "R1")]
    pub r1: [Complex64; 4],
    pub y: f64,
    pub est_error: f64,
}

/// Nodes, oriented weights and `v_R - I` of a discretized contour.
struct Discretization {
    weights: Vec<Complex64>,
    jumps: Vec<Mat2C>,
}

fn discretize(c: &ContourSet, g: &GFunction) -> Result<Discretization> {
    let mut weights = c.circle_weights.clone();
    let mut jumps = Vec::with_capacity(c.node_count());
    for z in &c.circle_nodes {
        jumps.push(jump_vr_minus_identity(*z, Component::Circle, g, c)?);
    }
    for p in &c.leg_panels {
        weights.extend_from_slice(&p.weights);
        for z in &p.nodes {
            jumps.push(jump_vr_minus_identity(*z, p.component, g, c)?);
        }
    }
    Ok(Discretization { weights, jumps })
}

/// `-(1/2 pi i) sum_k W_k mu_k (v_k - I)`.
fn first_moment(d: &Discretization, mu: &[Mat2C]) -> Mat2C {
    let k = Complex64::new(0.0, 1.0 / (2.0 * PI));
    let mut acc = Mat2C::zero();
    for ((w, m), v) in d.weights.iter().zip(mu).zip(&d.jumps) {
        acc += (*m * *v) * *w;
    }
    acc * k
}

fn apply(cm: &[Vec<Complex64>], f: &[Complex64]) -> Vec<Complex64> {
    cm.iter().map(|row| row.iter().zip(f).map(|(a, b)| a * b).sum()).collect()
}

/// One fixed-point step `mu -> I + C_-(mu (v - I))`.
fn neumann_step(cm: &[Vec<Complex64>], d: &Discretization, mu: &[Mat2C]) -> Vec<Mat2C> {
    let prod: Vec<Mat2C> = mu.iter().zip(&d.jumps).map(|(m, v)| *m * *v).collect();
    let pick = |f: fn(&Mat2C) -> Complex64| -> Vec<Complex64> { apply(cm, &prod.iter().map(f).collect::<Vec<_>>()) };
    let (e11, e12, e21, e22) = (pick(|m| m.a11), pick(|m| m.a12), pick(|m| m.a21), pick(|m| m.a22));
    (0..mu.len())
        .map(|i| Mat2C::new(e11[i] + 1.0, e12[i], e21[i], e22[i] + 1.0))
        .collect()
}

fn neumann(cm: &[Vec<Complex64>], d: &Discretization, order: usize) -> (Mat2C, f64) {
    let mut mu = vec![Mat2C::identity(); d.jumps.len()];
    let mut prev = first_moment(d, &mu);
    let mut last_term = prev.max_abs();
    for _ in 0..order {
        mu = neumann_step(cm, d, &mu);
        let r = first_moment(d, &mu);
        last_term = (r - prev).max_abs();
        prev = r;
    }
    // the omitted tail is about the next term over (1 - ratio)
    let next = neumann_step(cm, d, &mu);
    let r_next = first_moment(d, &next);
    let term = (r_next - prev).max_abs();
    let ratio = if last_term > 0.0 { (term / last_term).min(0.5) } else { 0.5 };
    (prev, term / (1.0 - ratio))
}

fn dense(cm: &[Vec<Complex64>], d: &Discretization) -> Result<(Mat2C, f64)> {
    let n = d.jumps.len();
    let one = Complex64::new(1.0, 0.0);
    // unknowns (a, b) = one row of mu: a = e1 + C(a V11 + b V21), b = e2 + C(a V12 + b V22)
    let a = DMatrix::from_fn(2 * n, 2 * n, |r, col| {
        let (bi, i) = (r / n, r % n);
        let (bj, k) = (col / n, col % n);
        let v = &d.jumps[k];
        let coeff = match (bi, bj) {
            (0, 0) => v.a11,
            (0, 1) => v.a21,
            (1, 0) => v.a12,
            _ => v.a22,
        };
        let diag = if r == col { one } else { Complex64::new(0.0, 0.0) };
        diag - cm[i][k] * coeff
    });
    let norm1 = |m: &DMatrix<Complex64>| {
        (0..m.ncols()).map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
    };
    let lu = a.clone().lu();
    let inv = lu.try_inverse().ok_or(Pi2Error::IllConditioned(f64::INFINITY))?;
    let kappa = norm1(&a) * norm1(&inv);
    if !(kappa <= MAX_CONDITION) {
        return Err(Pi2Error::IllConditioned(kappa));
    }
    let mut mu = vec![Mat2C::zero(); n];
    for row in 0..2 {
        let rhs = DMatrix::from_fn(2 * n, 1, |r, _| if r / n == row { one } else { Complex64::new(0.0, 0.0) });
        let sol = &inv * rhs;
        for i in 0..n {
            let (p, q) = (sol[(i, 0)], sol[(n + i, 0)]);
            if row == 0 {
                mu[i].a11 = p;
                mu[i].a12 = q;
            } else {
                mu[i].a21 = p;
                mu[i].a22 = q;
            }
        }
    }
    let r1 = first_moment(d, &mu);
    Ok((r1, kappa * f64::EPSILON * r1.max_abs()))
}

/// Solve for R on a prepared contour.
pub fn solve_r_on(c: &ContourSet, g: &GFunction, cfg: &RhConfig) -> Result<(RMoments, f64)> {
    let d = discretize(c, g)?;
    let max_jump = d.jumps.iter().map(|v| v.max_abs()).fold(0.0, f64::max);
    let cm = cauchy_matrix(c);
    let (r1, est_error) = if cfg.dense { dense(&cm, &d)? } else { neumann(&cm, &d, cfg.neumann_order) };
    let m = RMoments { r1, x: c.x, t: c.t, neumann_order: cfg.neumann_order, est_error, dense: cfg.dense };
    Ok((m, max_jump))
}

/// First moment of R at `(x, T)`.
pub fn solve_r(x: f64, t: f64, cfg: &RhConfig) -> Result<RMoments> {
    let c = build_contour(x, t, cfg)?;
    let g = solve_z0(x, t)?;
    Ok(solve_r_on(&c, &g, cfg)?.0)
}

/// `y = z0 |x|^{1/3}/2 + 2 |x|^{1/3} R1_11 - |x|^{2/3} R1_12^2`.
pub fn extract_y(m: &RMoments, g: &GFunction) -> Result<f64> {
    let s = g.x.abs().cbrt();
    let y = Complex64::new(0.5 * g.z0 * s, 0.0) + m.r1.a11 * (2.0 * s) - m.r1.a12 * m.r1.a12 * (s * s);
    if y.im.abs() > 1e-8 {
        return Err(Pi2Error::NonrealExtraction(y.im));
    }
    Ok(y.re)
}

/// Full evaluation with its diagnostic record.
pub fn rh_evaluate(x: f64, t: f64, cfg: &RhConfig) -> Result<RhDump> {
    let c = build_contour(x, t, cfg)?;
    let g = solve_z0(x, t)?;
    let (m, max_jump) = solve_r_on(&c, &g, cfg)?;
    let y = extract_y(&m, &g)?;
    Ok(RhDump {
        x,
        t,
        sigma: c.sigma,
        delta: c.delta,
        panel_count: c.panel_count(),
        max_jump_deviation: max_jump,
        r1: m.r1.entries(),
        y,
        est_error: m.est_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::gfunc::y_leading;
    use crate::rh::parametrix::delta_residues;

    #[test]
    fn zero_moment_gives_leading_term() {
        let g = solve_z0(250.0, 0.4).unwrap();
        let m = RMoments { r1: Mat2C::zero(), x: 250.0, t: 0.4, neumann_order: 0, est_error: 0.0, dense: false };
        assert_eq!(extract_y(&m, &g).unwrap(), y_leading(250.0, 0.4).unwrap());
    }

    #[test]
    fn nonreal_moment_is_rejected() {
        let g = solve_z0(250.0, 0.0).unwrap();
        let r1 = Mat2C::new(Complex64::new(0.0, 1e-3), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let m = RMoments { r1, x: 250.0, t: 0.0, neumann_order: 0, est_error: 0.0, dense: false };
        assert!(matches!(extract_y(&m, &g), Err(Pi2Error::NonrealExtraction(_))));
    }

    #[test]
    fn first_moment_at_one_hundred() {
        let cfg = RhConfig::default();
        let m = solve_r(100.0, 0.0, &cfg).unwrap();
        let g = solve_z0(100.0, 0.0).unwrap();
        let (_, r2) = delta_residues(&g).unwrap();
        let want12 = r2.a12.re * 100f64.powf(-4.0 / 3.0);
        assert!((m.r1.a12.re - want12).abs() <= 0.05 * want12.abs());
    }
}
