use num_complex::Complex64;
use pi2_core::asymptotics::*;
use pi2_core::lax::*;
use pi2_core::Mat2C;

#[test]
fn cubic_symmetry_is_x_to_minus_x_with_z0_flipped() {
    for (x, t) in [(3.0, 0.7), (250.0, -2.0), (0.5, 4.0)] {
        let a = solve_z0(x, t).unwrap().z0;
        let b = solve_z0(-x, t).unwrap().z0;
        assert!((a + b).abs() < 1e-13 * a.abs().max(1.0));
    }
}

#[test]
fn leading_law_is_the_cube_root() {
    for x in [1e3f64, 1e6] {
        let want = -(6.0 * x).cbrt();
        assert!((y_leading(x, 0.0).unwrap() - want).abs() < 1e-10 * want.abs());
        assert!((y_leading(-x, 0.0).unwrap() + want).abs() < 1e-10 * want.abs());
    }
}

#[test]
fn conformal_map_vanishes_at_the_branch_point() {
    let g = solve_z0(80.0, 0.3).unwrap();
    let z0 = Complex64::new(g.z0, 0.0);
    assert!(conformal_f(z0, &g).unwrap().norm() < 1e-14);
    let (q0, _) = conformal_f_taylor(&g);
    let h = 1e-6;
    let d = (conformal_f(z0 + h, &g).unwrap() - conformal_f(z0 - h, &g).unwrap()) / (2.0 * h);
    assert!((d.re - q0).abs() < 1e-8);
}

#[test]
fn an_exact_polynomial_jet_has_zero_defect() {
    // y = 2 with x = 2T - 4/3 solves F = 0 with all derivatives zero
    let t = 1.0;
    let j = Jet4 { y: 2.0, x: 2.0 * t - 4.0 / 3.0, t, ..Default::default() };
    assert!(pi2_residual(&j).abs() < 1e-15);
    for zeta in [Complex64::new(0.0, 0.0), Complex64::new(2.5, -1.0)] {
        assert!(compatibility_defect(zeta, &j).max_abs() < 1e-13);
    }
}

#[test]
fn stokes_data_closes_the_cycle() {
    assert_eq!(stokes_relation_check(&pole_free_stokes_data()), Mat2C::from_real(0.0, 1.0, -1.0, 0.0));
}
