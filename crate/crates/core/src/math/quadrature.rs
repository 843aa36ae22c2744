//! Gauss-Legendre rules and Legendre polynomial helpers.

use std::f64::consts::PI;

/// `P_0(t), ..., P_{n-1}(t)`.
pub fn legendre_values(n: usize, t: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n);
    if n == 0 {
        return p;
    }
    p.push(1.0);
    if n > 1 {
        p.push(t);
    }
    for k in 1..n.saturating_sub(1) {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * t * p[k] - kf * p[k - 1]) / (kf + 1.0);
        p.push(next);
    }
    p
}

/// `P_n(t)` and `P_n'(t)`.
fn legendre_with_derivative(n: usize, t: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, t);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * t * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (t * p1 - p0) / (t * t - 1.0))
}

/// Nodes (increasing) and weights of the `n`-point rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        let mut t = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, t);
            let dt = p / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, t);
        let w = 2.0 / ((1.0 - t * t) * dp * dp);
        nodes[i] = -t;
        nodes[n - 1 - i] = t;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Gauss collocation tableau on `[0, 1]`: `(c, A, b)` with
/// `A[j][l] = int_0^{c_j} ell_l`.
pub fn gauss_collocation_tableau(s: usize) -> (Vec<f64>, Vec<Vec<f64>>, Vec<f64>) {
    let (t, w) = gauss_legendre(s);
    let c: Vec<f64> = t.iter().map(|v| 0.5 * (v + 1.0)).collect();
    let b: Vec<f64> = w.iter().map(|v| 0.5 * v).collect();
    let lagrange = |l: usize, x: f64| -> f64 {
        (0..s).filter(|&m| m != l).map(|m| (x - c[m]) / (c[l] - c[m])).product()
    };
    // Integrate each Lagrange basis polynomial exactly with a wider rule.
    let (qt, qw) = gauss_legendre(s + 1);
    let a = (0..s)
        .map(|j| {
            (0..s)
                .map(|l| {
                    qt.iter()
                        .zip(&qw)
                        .map(|(tt, ww)| {
                            let x = 0.5 * c[j] * (tt + 1.0);
                            0.5 * c[j] * ww * lagrange(l, x)
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    (c, a, b)
}
