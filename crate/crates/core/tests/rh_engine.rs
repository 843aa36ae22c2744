use num_complex::Complex64;
use pi2_core::asymptotics::{re_g_scan, solve_z0, y_leading, LENS_ANGLE};
use pi2_core::rh::*;
use pi2_core::{Mat2C, Pi2Error};

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = xs.iter().zip(ys).map(|(x, y)| (x.ln(), y.ln())).unzip();
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let num: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    num / den
}

const XS: [f64; 4] = [50.0, 100.0, 200.0, 400.0];

#[test]
fn moment_decay_rates() {
    let cfg = RhConfig::default();
    let (mut r11, mut r12, mut dy) = (vec![], vec![], vec![]);
    for x in XS {
        let m = solve_r(x, 0.0, &cfg).unwrap();
        let g = solve_z0(x, 0.0).unwrap();
        r11.push(m.r1.a11.norm());
        r12.push(m.r1.a12.norm());
        dy.push((extract_y(&m, &g).unwrap() - y_leading(x, 0.0).unwrap()).abs());
    }
    let s11 = slope(&XS, &r11);
    assert!((-2.6..=-2.1).contains(&s11), "{s11}");
    assert!((slope(&XS, &r12) + 4.0 / 3.0).abs() < 0.05);
    assert!(slope(&XS, &dy) <= -1.8);
}

#[test]
fn neumann_matches_dense() {
    let cfg = RhConfig::default();
    let n = solve_r(100.0, 0.0, &cfg).unwrap();
    let d = solve_r(100.0, 0.0, &RhConfig { dense: true, ..cfg }).unwrap();
    assert!(d.dense && !n.dense);
    // a rounding floor on top of the two error estimates
    assert!((n.r1 - d.r1).max_abs() <= n.est_error + d.est_error + 1e-15);
}

#[test]
fn far_values_follow_the_leading_law() {
    let cfg = RhConfig::default();
    let y = rh_evaluate(1000.0, 0.0, &cfg).unwrap().y;
    assert!((y + 6000f64.cbrt()).abs() <= 0.05 * 1000f64.powi(-2));
    // only the leading law is odd: the quadratic derivative terms are even
    let ym = rh_evaluate(-1000.0, 0.0, &cfg).unwrap().y;
    assert!((ym - 6000f64.cbrt()).abs() <= 0.05 * 1000f64.powi(-2));
}

#[test]
fn first_moment_is_real_and_trace_free() {
    let cfg = RhConfig::default();
    for (x, t) in [(60.0, 0.0), (-80.0, 1.0), (150.0, -1.0), (-25.0, 1.0)] {
        let m = solve_r(x, t, &cfg).unwrap();
        assert!(m.r1.entries().iter().all(|z| z.im.abs() <= 1e-8), "{x} {t}");
        assert!(m.r1.trace().norm() <= 1e-6 * m.r1.norm() + 1e-12);
    }
}

#[test]
fn jump_determinants_are_one() {
    let (x, t) = (40.0, 0.5);
    let g = solve_z0(x, t).unwrap();
    let c = build_contour(x, t, &RhConfig::default()).unwrap();
    for z in &c.circle_nodes {
        assert!((jump_vr(*z, Component::Circle, &g, &c).unwrap().det() - 1.0).norm() < 1e-10);
    }
    for p in &c.leg_panels {
        for z in &p.nodes {
            assert!((jump_vr(*z, p.component, &g, &c).unwrap().det() - 1.0).norm() < 1e-10);
        }
    }
    let off = Complex64::new(c.center, 2.0 * c.delta);
    assert!(matches!(jump_vr(off, Component::Circle, &g, &c), Err(Pi2Error::Domain(_))));
}

#[test]
fn leg_jump_estimate() {
    let (x, delta) = (100.0, 1.0);
    let g = solve_z0(x, 0.0).unwrap();
    let c = build_contour(x, 0.0, &RhConfig { delta, ..Default::default() }).unwrap();
    let radii: Vec<f64> = (1..=40).map(|k| 0.1 * k as f64).collect();
    let cl = re_g_scan(&g, &radii, &[0.0, LENS_ANGLE]).c_lower;
    assert!(cl >= 0.0005, "{cl}");
    let z = Complex64::new(c.center, 0.0) + Complex64::from_polar(1.0 + delta, LENS_ANGLE);
    // the point sits just off the truncated leg, so evaluate the leg formula directly
    let p = parametrix_outer(z, x, &g).unwrap();
    let e = pi2_core::asymptotics::g_eval(z, &g).unwrap() * (2.0 * x.powf(7.0 / 6.0));
    let v = p * (Mat2C::lower(Complex64::new(1.0, 0.0)) - Mat2C::identity()) * p.inv_unimodular() * e.exp();
    let bound = (-cl * x.powf(7.0 / 6.0) * (1.0 + delta).powf(3.5)).exp();
    assert!(v.max_abs() <= bound, "{} > {bound}", v.max_abs());
}

#[test]
fn circle_jump_matching_orders() {
    let mut first = vec![];
    let mut second = vec![];
    for x in XS {
        let g = solve_z0(x, 0.0).unwrap();
        let c = build_contour(x, 0.0, &RhConfig::default()).unwrap();
        let (mut e1, mut e2) = (0.0f64, 0.0f64);
        for z in &c.circle_nodes {
            let v = circle_jump_minus_identity(*z, x, &g, c.sigma).unwrap();
            let (d1, d2) = delta_terms(*z, &g).unwrap();
            let r = v - d1 * (1.0 / x);
            e1 = e1.max(r.max_abs());
            e2 = e2.max((r - d2 * x.powf(-4.0 / 3.0)).max_abs());
        }
        first.push(e1);
        second.push(e2);
    }
    assert!((slope(&XS, &first) + 4.0 / 3.0).abs() < 0.1);
    assert!(slope(&XS, &second) <= -2.2);
}

#[test]
fn residues_from_the_contour_circle() {
    let g = solve_z0(100.0, 0.0).unwrap();
    let c = build_contour(100.0, 0.0, &RhConfig::default()).unwrap();
    let mut acc = Mat2C::zero();
    for (z, w) in c.circle_nodes.iter().zip(&c.circle_weights) {
        acc += delta_terms(*z, &g).unwrap().0 * *w;
    }
    let res = acc * Complex64::new(0.0, 1.0 / (2.0 * std::f64::consts::PI));
    assert!((res - delta_residues(&g).unwrap().0).max_abs() < 1e-12);
}

#[test]
fn negative_x_with_positive_time() {
    let c = build_contour(-25.0, 1.0, &RhConfig::default()).unwrap();
    assert!((c.sigma - LENS_ANGLE).abs() < 2.0 * c.eps0);
}

#[test]
fn dump_round_trips_through_json() {
    let d = rh_evaluate(75.0, 0.25, &RhConfig::default()).unwrap();
    let s = serde_json::to_string(&d).unwrap();
    for key in ["\"x\"", "\"T\"", "\"sigma\"", "\"delta\"", "\"panel_count\"", "\"max_jump_deviation\"", "\"R1\"", "\"y\"", "\"est_error\""] {
        assert!(s.contains(key), "{key}");
    }
    let back: RhDump = serde_json::from_str(&s).unwrap();
    assert_eq!(back, d);
}

#[test]
fn config_rejects_unknown_keys() {
    assert!(serde_json::from_str::<RhConfig>(r#"{"delta": 0.8}"#).is_ok());
    assert!(serde_json::from_str::<RhConfig>(r#"{"delta": 0.8, "nodes": 3}"#).is_err());
}
