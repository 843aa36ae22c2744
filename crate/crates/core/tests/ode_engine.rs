use num_complex::Complex64;
use pi2_core::lax::{compatibility_defect, pi2_residual};
use pi2_core::ode::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_invariants(g: &SolutionGrid, l: f64) {
    assert_eq!(g.lo(), -l);
    assert_eq!(g.hi(), l);
    assert!(g.nodes.windows(2).all(|w| w[1] > w[0]));
    assert!(g.max_abs_pi2_residual() <= g.residual_norm.max(1e-300) * (1.0 + 1e-9));
    assert!(g.jets.iter().all(|j| j.is_finite()));
    assert_eq!(g.engine_tag, EngineTag::Ode);
}

fn max_diff_on(a: &SolutionGrid, b: &SolutionGrid, lo: f64, hi: f64) -> f64 {
    (0..=200)
        .map(|k| lo + (hi - lo) * k as f64 / 200.0)
        .map(|x| (jet_at(a, x).unwrap().y - jet_at(b, x).unwrap().y).abs())
        .fold(0.0, f64::max)
}

#[test]
fn t0_window_20() {
    let cfg = BVPConfig::default();
    let g = solve_bvp(&cfg, 0.0, None).unwrap();
    check_invariants(&g, 20.0);
    assert!(g.residual_norm <= 1e-8);
    assert!((g.jets.last().unwrap().y + 120f64.cbrt()).abs() < 1e-12);
    assert!((g.jets[0].y - 120f64.cbrt()).abs() < 1e-12);
    for j in &g.jets {
        assert!(j.y.abs() <= (6.0 * j.x.abs()).cbrt() + 2.0, "envelope at x = {}", j.x);
    }
}

#[test]
fn perturbed_guess_lands_on_the_same_grid() {
    let cfg = BVPConfig::default();
    let g = solve_bvp(&cfg, 0.0, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut noisy = g.clone();
    for j in noisy.jets.iter_mut() {
        j.y *= 1.0 + rng.random_range(-0.1..0.1);
        j.y_x *= 1.0 + rng.random_range(-0.1..0.1);
    }
    let h = solve_bvp(&cfg, 0.0, Some(&noisy)).unwrap();
    let d = g.jets.iter().zip(&h.jets).map(|(a, b)| (a.y - b.y).abs()).fold(0.0, f64::max);
    assert!(d <= 1e-8, "{d}");
}

#[test]
fn continuation_to_one() {
    let cfg = BVPConfig::default();
    let grids = continuation_in_t(&cfg, &[0.0, 0.5, 1.0]).unwrap();
    assert_eq!(grids.len(), 3);
    for (g, t) in grids.iter().zip([0.0, 0.5, 1.0]) {
        assert_eq!(g.t, t);
        check_invariants(g, 20.0);
        assert!(g.residual_norm <= 10.0 * cfg.newton_tol);
    }
}

#[test]
fn zero_target_is_a_plain_solve() {
    let cfg = BVPConfig { l: 10.0, ..Default::default() };
    let a = continuation_in_t(&cfg, &[0.0]).unwrap().remove(0);
    let b = solve_bvp(&cfg, 0.0, None).unwrap();
    assert_eq!(a, b);
}

#[test]
fn negative_targets_keep_input_order() {
    let cfg = BVPConfig { l: 10.0, ..Default::default() };
    let grids = continuation_in_t(&cfg, &[-1.0, 0.0, -0.5]).unwrap();
    let ts: Vec<f64> = grids.iter().map(|g| g.t).collect();
    assert_eq!(ts, vec![-1.0, 0.0, -0.5]);
}

#[test]
fn boundary_data_is_odd_in_x() {
    for t in [-1.0, 0.0, 1.0] {
        let (ym, dym, yp, dyp) = boundary_values(20.0, t).unwrap();
        assert!((ym + yp).abs() < 1e-12);
        assert!((dym - dyp).abs() < 1e-14);
    }
}

#[test]
fn window_robustness() {
    for t in [0.0, 1.0] {
        let a = continuation_in_t(&BVPConfig::default(), &[t]).unwrap().remove(0);
        let b = continuation_in_t(&BVPConfig { l: 30.0, ..Default::default() }, &[t]).unwrap().remove(0);
        let d = max_diff_on(&a, &b, -10.0, 10.0);
        assert!(d <= 10.0 / 400.0, "T = {t}: {d}");
    }
}

#[test]
fn mesh_doubling_at_origin() {
    let a = solve_bvp(&BVPConfig::default(), 0.0, None).unwrap();
    let b = solve_bvp(&BVPConfig { mesh_density: 32.0, ..Default::default() }, 0.0, None).unwrap();
    let d = (jet_at(&a, 0.0).unwrap().y - jet_at(&b, 0.0).unwrap().y).abs();
    assert!(d <= 1e-7, "{d}");
}

#[test]
fn interpolated_jets_pass_the_lax_oracle() {
    let cfg = BVPConfig::default();
    let g = solve_bvp(&cfg, 0.0, None).unwrap();
    let zeta = Complex64::new(0.7, -1.3);
    for k in 0..97 {
        let x = -19.9 + 39.8 * k as f64 / 96.0;
        let j = jet_at(&g, x).unwrap();
        assert!(pi2_residual(&j).abs() <= 1e-14 * (1.0 + j.magnitude().powi(3)));
        let d = compatibility_defect(zeta, &j);
        assert!(d.max_abs() <= 10.0 * cfg.newton_tol * (1.0 + j.magnitude().powi(3)), "x = {x}");
    }
    assert!(jet_at(&g, 20.5).is_err());
}

#[test]
fn bad_config_is_rejected() {
    let cfg = BVPConfig { l: -1.0, ..Default::default() };
    assert!(solve_bvp(&cfg, 0.0, None).is_err());
    let parsed: Result<BVPConfig, _> = serde_json::from_str(r#"{"L": 20, "bogus": 1}"#);
    assert!(parsed.is_err());
}
