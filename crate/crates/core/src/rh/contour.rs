//! The reduced jump contour of R and its quadrature.
//!
//! Inside the disk the local contour is the f-preimage of the model rays;
//! it only selects the sector of M and carries no jump for R. Outside the
//! disk R jumps on two lens legs, oriented inwards, and on the real ray to
//! the right of the disk. The circle itself is oriented clockwise.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::parametrix::leg_jump_size;
use crate::asymptotics::gfunc::{conformal_f, conformal_f_prime, solve_z0, GFunction};
use crate::asymptotics::reg::{measure_eps0, LENS_ANGLE};
use crate::error::{Pi2Error, Result};
use crate::math::quadrature::gauss_legendre;

/// Legs are cut where `||v_R - I||` drops below this.
pub const TRUNCATION_TOL: f64 = 1e-16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RhConfig {
    pub delta: f64,
    /// Trapezoidal nodes on the circle.
    pub circle_nodes: usize,
    /// Gauss-Legendre nodes per leg panel.
    pub panel_nodes: usize,
    pub neumann_order: usize,
    /// Solve the discretized integral equation densely instead.
    pub dense: bool,
    pub x_min: f64,
}

impl Default for RhConfig {
    fn default() -> Self {
        Self { delta: 1.0, circle_nodes: 128, panel_nodes: 16, neumann_order: 2, dense: false, x_min: 10.0 }
    }
}

impl RhConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 3.0) {
            return Err(Pi2Error::Domain(format!("delta = {} outside (0, 3)", self.delta)));
        }
        if self.circle_nodes < 16 || self.circle_nodes % 2 == 1 {
            return Err(Pi2Error::Domain("circle_nodes must be even and at least 16".into()));
        }
        if self.panel_nodes < 12 {
            return Err(Pi2Error::Domain("panel_nodes must be at least 12".into()));
        }
        if !(self.x_min > 0.0) {
            return Err(Pi2Error::Domain("x_min must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Circle,
    UpperLeg,
    LowerLeg,
    RealRay,
}

/// A straight Gauss-Legendre panel from `a` to `b` (the orientation).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Panel {
    pub component: Component,
    pub a: Complex64,
    pub b: Complex64,
    /// Reference nodes on `[-1, 1]` and their weights.
    pub t: Vec<f64>,
    pub w: Vec<f64>,
    pub nodes: Vec<Complex64>,
    /// Oriented `ds` weights.
    pub weights: Vec<Complex64>,
}

impl Panel {
    fn new(component: Component, a: Complex64, b: Complex64, rule: &(Vec<f64>, Vec<f64>)) -> Self {
        let (mid, half) = ((a + b) * 0.5, (b - a) * 0.5);
        Self {
            component,
            a,
            b,
            t: rule.0.clone(),
            w: rule.1.clone(),
            nodes: rule.0.iter().map(|t| mid + half * *t).collect(),
            weights: rule.1.iter().map(|w| half * *w).collect(),
        }
    }

    pub fn half(&self) -> Complex64 {
        (self.b - self.a) * 0.5
    }

    /// Reference coordinate of `z`.
    pub fn tau(&self, z: Complex64) -> Complex64 {
        (z * 2.0 - self.a - self.b) / (self.b - self.a)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourSet {
    pub x: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub delta: f64,
    /// Disk centre, the large-|x| limit of z0.
    pub center: f64,
    pub sigma: f64,
    /// Half-width of the validated angular window of the limiting phase.
    pub eps0: f64,
    pub exit_upper: Complex64,
    pub exit_lower: Complex64,
    pub circle_nodes: Vec<Complex64>,
    /// Oriented (clockwise) trapezoidal `ds` weights.
    pub circle_weights: Vec<Complex64>,
    pub leg_panels: Vec<Panel>,
    /// Largest distance from the centre kept on any leg (`delta` if every
    /// leg was dropped).
    pub truncation_radius: f64,
    /// Samples of the upper interior leg, from z0 to the exit point.
    pub interior_upper: Vec<Complex64>,
}

impl ContourSet {
    pub fn panel_count(&self) -> usize {
        self.leg_panels.len() + 1
    }

    pub fn node_count(&self) -> usize {
        self.circle_nodes.len() + self.leg_panels.iter().map(|p| p.nodes.len()).sum::<usize>()
    }

    pub fn circle_angle(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * 2.0 * PI / self.circle_nodes.len() as f64
    }

    /// Whether `z` lies on the given component (to rounding).
    pub fn contains(&self, z: Complex64, component: Component) -> bool {
        let c = Complex64::new(self.center, 0.0);
        let tol = 1e-9 * (1.0 + self.truncation_radius);
        match component {
            Component::Circle => ((z - c).norm() - self.delta).abs() <= tol,
            Component::RealRay => z.im.abs() <= tol && z.re >= self.center + self.delta - tol,
            Component::UpperLeg | Component::LowerLeg => {
                let dir = leg_direction(component);
                let d = (z - c) / dir;
                d.im.abs() <= tol && d.re >= self.delta - tol
            }
        }
    }
}

fn leg_direction(component: Component) -> Complex64 {
    match component {
        Component::UpperLeg => Complex64::from_polar(1.0, LENS_ANGLE),
        Component::LowerLeg => Complex64::from_polar(1.0, -LENS_ANGLE),
        _ => Complex64::new(1.0, 0.0),
    }
}

/// Solve `f(zeta) = w` by Newton from `guess`.
fn preimage(w: Complex64, guess: Complex64, g: &GFunction) -> Result<Complex64> {
    let mut z = guess;
    for _ in 0..60 {
        let dz = (conformal_f(z, g)? - w) / conformal_f_prime(z, g)?;
        z -= dz;
        if dz.norm() <= 1e-15 * (1.0 + z.norm()) {
            return Ok(z);
        }
    }
    Err(Pi2Error::NotConformal(format!("no preimage of w = {w}")))
}

/// Follow the preimage of the ray `arg w = sigma` from z0 until it leaves
/// the disk; returns the exit point and samples along the way.
fn trace_ray(sigma: f64, g: &GFunction, center: f64, delta: f64) -> Result<(Complex64, Vec<Complex64>)> {
    let dir = Complex64::from_polar(1.0, sigma);
    let c = Complex64::new(center, 0.0);
    let dr = 0.02 * delta;
    let mut z = Complex64::new(g.z0, 0.0);
    let mut r = 0.0;
    let mut samples = vec![z];
    loop {
        let next_r = r + dr;
        let guess = z + dir * dr / conformal_f_prime(z, g)?;
        let next = preimage(dir * next_r, guess, g)?;
        if (next - c).norm() >= delta {
            // bisect on r between r (inside) and next_r (outside)
            let (mut lo, mut hi, mut zl) = (r, next_r, z);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                let zm = preimage(dir * mid, zl, g)?;
                if (zm - c).norm() < delta {
                    lo = mid;
                    zl = zm;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-15 * hi {
                    break;
                }
            }
            let exit = preimage(dir * (0.5 * (lo + hi)), zl, g)?;
            samples.push(exit);
            return Ok((exit, samples));
        }
        z = next;
        r = next_r;
        samples.push(z);
        if r > 50.0 * delta {
            return Err(Pi2Error::ContourMismatch(format!("ray at sigma = {sigma} never leaves the disk")));
        }
    }
}

/// Angle of the exit point relative to the centre.
fn exit_angle(sigma: f64, g: &GFunction, center: f64, delta: f64) -> Result<f64> {
    let (p, _) = trace_ray(sigma, g, center, delta)?;
    Ok((p - center).arg())
}

/// Distance along a leg beyond which `||v_R - I|| < TRUNCATION_TOL`.
fn truncation(component: Component, g: &GFunction, x: f64, center: f64, delta: f64) -> Result<f64> {
    let c = Complex64::new(center, 0.0);
    let dir = leg_direction(component);
    let size = |t: f64| leg_jump_size(c + dir * t, component, x, g);
    if size(delta)? < TRUNCATION_TOL {
        return Ok(delta);
    }
    let mut t = delta;
    let step = 0.05 * delta;
    while size(t)? >= TRUNCATION_TOL {
        t += step;
        if t > 100.0 * delta {
            return Err(Pi2Error::ContourMismatch(format!("{component:?} jump does not decay")));
        }
    }
    Ok(t)
}

/// Panels on `[delta, t_max]`, refined dyadically towards the disk.
fn leg_panels(component: Component, delta: f64, t_max: f64, center: f64, rule: &(Vec<f64>, Vec<f64>)) -> Vec<Panel> {
    if t_max <= delta {
        return Vec::new();
    }
    let len = t_max - delta;
    let n_uniform = (len / (0.5 * delta)).ceil().max(1.0) as usize;
    let h = len / n_uniform as f64;
    let mut breaks = vec![delta, delta + h / 8.0, delta + h / 4.0, delta + h / 2.0];
    breaks.extend((1..=n_uniform).map(|k| delta + h * k as f64));
    let c = Complex64::new(center, 0.0);
    let dir = leg_direction(component);
    let pt = |t: f64| c + dir * t;
    let mut panels: Vec<Panel> = breaks
        .windows(2)
        .map(|b| {
            if component == Component::RealRay {
                Panel::new(component, pt(b[0]), pt(b[1]), rule)
            } else {
                // lens legs run from infinity towards the disk
                Panel::new(component, pt(b[1]), pt(b[0]), rule)
            }
        })
        .collect();
    if component != Component::RealRay {
        panels.reverse();
    }
    panels
}

/// Build the contour for `(x, T)`, locating sigma so the upper interior leg
/// leaves the disk at `center + delta e^{6 pi i/7}`.
pub fn build_contour(x: f64, t: f64, cfg: &RhConfig) -> Result<ContourSet> {
    cfg.validate()?;
    if !(x.abs() >= cfg.x_min) || !t.is_finite() {
        return Err(Pi2Error::Domain(format!("|x| = {} below x_min = {}", x.abs(), cfg.x_min)));
    }
    let g = solve_z0(x, t)?;
    let delta = cfg.delta;
    let center = g.z0_hat;
    if (g.z0 - center).abs() >= 0.5 * delta {
        return Err(Pi2Error::ContourMismatch(format!("z0 = {} too far from the disk centre {center}", g.z0)));
    }
    check_conformal(&g, center, delta)?;
    // the window is a property of the limiting phase, which at T = 0 is
    // scale invariant in x
    let eps0 = measure_eps0(&solve_z0(x.signum(), 0.0)?, 0.0).unwrap_or(0.0);
    let target = Complex64::new(center, 0.0) + Complex64::from_polar(delta, LENS_ANGLE);

    // secant iteration on sigma, started from the ray through f(target)
    let mut s0 = conformal_f(target, &g)?.arg();
    let mut e0 = exit_angle(s0, &g, center, delta)? - LENS_ANGLE;
    let mut s1 = s0 - e0;
    let mut sigma = s0;
    for _ in 0..50 {
        if e0.abs() <= 1e-14 {
            sigma = s0;
            break;
        }
        let e1 = exit_angle(s1, &g, center, delta)? - LENS_ANGLE;
        sigma = s1;
        if e1.abs() <= 1e-14 || e1 == e0 {
            break;
        }
        let s2 = s1 - e1 * (s1 - s0) / (e1 - e0);
        (s0, e0, s1) = (s1, e1, s2);
    }
    if !(sigma > LENS_ANGLE - 2.0 * eps0 - 1e-12 && sigma < LENS_ANGLE + 2.0 * eps0 + 1e-12) || !(sigma > PI / 3.0 && sigma < PI) {
        return Err(Pi2Error::ContourMismatch(format!(
            "sigma = {sigma} outside 6pi/7 +- 2 eps0 (eps0 = {eps0})"
        )));
    }
    let (exit, interior_upper) = trace_ray(sigma, &g, center, delta)?;
    if (exit - target).norm() > 1e-10 {
        return Err(Pi2Error::ContourMismatch(format!("exit point {exit} misses {target}")));
    }

    let n = cfg.circle_nodes;
    let h = 2.0 * PI / n as f64;
    let circle_nodes: Vec<Complex64> =
        (0..n).map(|j| Complex64::new(center, 0.0) + Complex64::from_polar(delta, (j as f64 + 0.5) * h)).collect();
    let circle_weights =
        circle_nodes.iter().map(|z| -Complex64::i() * (z - center) * h).collect();

    let rule = gauss_legendre(cfg.panel_nodes);
    let mut leg_panels_all = Vec::new();
    let mut truncation_radius = delta;
    for comp in [Component::UpperLeg, Component::LowerLeg, Component::RealRay] {
        let t_max = truncation(comp, &g, x, center, delta)?;
        truncation_radius = truncation_radius.max(t_max);
        leg_panels_all.extend(leg_panels(comp, delta, t_max, center, &rule));
    }

    Ok(ContourSet {
        x,
        t,
        delta,
        center,
        sigma,
        eps0,
        exit_upper: exit,
        exit_lower: exit.conj(),
        circle_nodes,
        circle_weights,
        leg_panels: leg_panels_all,
        truncation_radius,
        interior_upper,
    })
}

/// Sanity checks on f over the closed disk: bounded-away derivative, small
/// argument of f', and pairwise distinct images on a polar mesh.
fn check_conformal(g: &GFunction, center: f64, delta: f64) -> Result<()> {
    let c = Complex64::new(center, 0.0);
    let mut pts = Vec::new();
    for ri in 1..=5 {
        for k in 0..10 {
            let z = c + Complex64::from_polar(delta * ri as f64 / 5.0, 2.0 * PI * (k as f64 + 0.25 * ri as f64) / 10.0);
            pts.push(z);
        }
    }
    let mut images = Vec::with_capacity(pts.len());
    for &z in &pts {
        let d = conformal_f_prime(z, g)?;
        if d.norm() < 0.05 || d.arg().abs() >= PI / 2.0 {
            return Err(Pi2Error::NotConformal(format!("f'({z}) = {d}")));
        }
        images.push(conformal_f(z, g)?);
    }
    for i in 0..images.len() {
        for j in 0..i {
            if (images[i] - images[j]).norm() < 1e-6 {
                return Err(Pi2Error::NotConformal("f is not injective on the disk".into()));
            }
        }
    }
    Ok(())
}
