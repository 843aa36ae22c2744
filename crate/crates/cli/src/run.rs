//! Mode dispatch, engine evaluation and output emission.

use std::fmt::Write as _;

use log::{debug, info};
use pi2_core::asymptotics::{g_eval, g_eval_side, re_g_scan, solve_z0, y_leading, ReGBoundsReport, LENS_ANGLE};
use pi2_core::ode::{continuation_in_t, jet_at};
use pi2_core::rh::rh_evaluate;
use pi2_core::{Complex64, CutSide, Pi2Error, RhDump, SolutionGrid};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::config::{Format, Mode, RunConfig};
use crate::svg::{line_plot, sign_map, Series};

/// An engine failure at a particular grid point.
#[derive(Debug, Clone, Serialize)]
pub struct EngineFailure {
    pub kind: &'static str,
    pub message: String,
    pub x: Option<f64>,
    #[serde(rename = "T")]
    pub t: Option<f64>,
}

impl EngineFailure {
    fn at(e: Pi2Error, x: Option<f64>, t: Option<f64>) -> Self {
        Self { kind: e.kind(), message: e.to_string(), x, t }
    }

    /// Machine-readable record written to stderr.
    pub fn record(&self) -> String {
        json!({ "error": self }).to_string()
    }
}

type Res<T> = std::result::Result<T, EngineFailure>;

/// 17 significant digits.
fn f(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(f).unwrap_or_default()
}

/// Slope of the least-squares line through `(ln a, ln b)`.
pub fn loglog_slope(pts: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        pts.iter().filter(|(a, b)| *a > 0.0 && *b > 0.0).map(|(a, b)| (a.ln(), b.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if den == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / den)
}

/// Evaluate `work` over `items` on `jobs` threads, keeping input order.
fn par_map<I: Sync, O: Send>(jobs: usize, items: &[I], work: impl Fn(&I) -> O + Sync + Send) -> Vec<O> {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&work).collect()),
        Err(_) => items.iter().map(work).collect(),
    }
}

/// `(x, T)` pairs, T outermost.
fn points(cfg: &RunConfig) -> Vec<(f64, f64)> {
    let xs = cfg.xs();
    cfg.t_values.iter().flat_map(|&t| xs.iter().map(move |&x| (x, t))).collect()
}

fn metadata(cfg: &RunConfig) -> String {
    serde_json::to_string(cfg).expect("config serializes")
}

fn csv_header(cfg: &RunConfig) -> String {
    format!("# pi2 {}\n# config: {}\n", serde_json::to_value(cfg.mode()).unwrap().as_str().unwrap(), metadata(cfg))
}

/// Run the configured mode and return the rendered output.
pub fn run(cfg: &RunConfig) -> Res<String> {
    info!("mode {:?}, {} x values, T = {:?}", cfg.mode(), cfg.xs().len(), cfg.t_values);
    match cfg.mode() {
        Mode::Asym => asym(cfg),
        Mode::Ode => ode(cfg),
        Mode::Rh => rh(cfg),
        Mode::Compare => compare(cfg),
        Mode::RegScan => reg_scan(cfg),
    }
}

fn asym(cfg: &RunConfig) -> Res<String> {
    let rows: Vec<(f64, f64, f64, f64)> = points(cfg)
        .into_iter()
        .map(|(x, t)| {
            let g = solve_z0(x, t).map_err(|e| EngineFailure::at(e, Some(x), Some(t)))?;
            Ok((x, t, g.z0, 0.5 * g.z0 * x.abs().cbrt()))
        })
        .collect::<Res<_>>()?;
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = csv_header(cfg);
            out.push_str("x,T,z0,y_asym\n");
            for (x, t, z0, y) in &rows {
                let _ = writeln!(out, "{},{},{},{}", f(*x), f(*t), f(*z0), f(*y));
            }
            out
        }
        Format::Json => {
            let rows: Vec<_> = rows.iter().map(|(x, t, z0, y)| json!({"x": x, "T": t, "z0": z0, "y_asym": y})).collect();
            pretty(json!({"config": cfg, "rows": rows}))
        }
        Format::Svg => {
            let series = by_t(cfg, rows.iter().map(|r| (r.1, r.0, r.3)), "y_asym");
            line_plot("leading-order law", "x", "y", &series, &metadata(cfg))
        }
    })
}

fn by_t(cfg: &RunConfig, rows: impl Iterator<Item = (f64, f64, f64)> + Clone, label: &str) -> Vec<Series> {
    cfg.t_values
        .iter()
        .map(|&t| Series {
            label: format!("{label}, T = {t}"),
            points: rows.clone().filter(|r| r.0 == t).map(|r| (r.1, r.2)).collect(),
        })
        .collect()
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}

fn ode_grids(cfg: &RunConfig) -> Res<Vec<SolutionGrid>> {
    par_map(cfg.jobs, &cfg.t_values, |&t| {
        debug!("ode solve at T = {t}");
        continuation_in_t(&cfg.bvp, &[t]).map(|mut g| g.remove(0)).map_err(|e| EngineFailure::at(e, None, Some(t)))
    })
    .into_iter()
    .collect()
}

fn ode(cfg: &RunConfig) -> Res<String> {
    let grids = ode_grids(cfg)?;
    let xs = cfg.xs();
    // rows: T, x, y, y_x, y_xx, y_xxx, residual
    let mut rows: Vec<[f64; 7]> = Vec::new();
    for g in &grids {
        if xs.is_empty() {
            for (j, r) in g.jets.iter().zip(&g.node_residuals) {
                rows.push([g.t, j.x, j.y, j.y_x, j.y_xx, j.y_xxx, *r]);
            }
        } else {
            for &x in &xs {
                let j = jet_at(g, x).map_err(|e| EngineFailure::at(e, Some(x), Some(g.t)))?;
                rows.push([g.t, x, j.y, j.y_x, j.y_xx, j.y_xxx, g.residual_norm]);
            }
        }
    }
    let residual = if xs.is_empty() { "residual" } else { "grid_residual" };
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = csv_header(cfg);
            let _ = writeln!(out, "x,T,y,y_x,y_xx,y_xxx,{residual}");
            for r in &rows {
                let _ = writeln!(out, "{},{},{},{},{},{},{}", f(r[1]), f(r[0]), f(r[2]), f(r[3]), f(r[4]), f(r[5]), f(r[6]));
            }
            out
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| json!({"x": r[1], "T": r[0], "y": r[2], "y_x": r[3], "y_xx": r[4], "y_xxx": r[5], residual: r[6]}))
                .collect();
            pretty(json!({"config": cfg, "rows": rows}))
        }
        Format::Svg => {
            let series = by_t(cfg, rows.iter().map(|r| (r[0], r[1], r[2])), "y_ode");
            line_plot("boundary-value solution", "x", "y", &series, &metadata(cfg))
        }
    })
}

fn rh(cfg: &RunConfig) -> Res<String> {
    let dumps: Vec<RhDump> = par_map(cfg.jobs, &points(cfg), |&(x, t)| {
        rh_evaluate(x, t, &cfg.rh).map_err(|e| EngineFailure::at(e, Some(x), Some(t)))
    })
    .into_iter()
    .collect::<Res<_>>()?;
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = csv_header(cfg);
            out.push_str("x,T,sigma,delta,panel_count,max_jump_deviation,est_error,R1_11,R1_12,R1_21,R1_22,y_rh\n");
            for d in &dumps {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    f(d.x),
                    f(d.t),
                    f(d.sigma),
                    f(d.delta),
                    d.panel_count,
                    f(d.max_jump_deviation),
                    f(d.est_error),
                    f(d.r1[0].re),
                    f(d.r1[1].re),
                    f(d.r1[2].re),
                    f(d.r1[3].re),
                    f(d.y)
                );
            }
            out
        }
        Format::Json => pretty(json!({"config": cfg, "evaluations": dumps})),
        Format::Svg => {
            let series = by_t(cfg, dumps.iter().map(|d| (d.t, d.x, d.y)), "y_rh");
            line_plot("steepest-descent solution", "x", "y", &series, &metadata(cfg))
        }
    })
}

/// Errors that mean "outside this engine's domain" rather than a failure.
fn out_of_domain(e: &Pi2Error) -> bool {
    matches!(e, Pi2Error::Domain(_) | Pi2Error::ContourMismatch(_) | Pi2Error::NotConformal(_) | Pi2Error::Extrapolation { .. })
}

#[derive(Debug, Clone, Serialize)]
struct CompareRow {
    x: f64,
    #[serde(rename = "T")]
    t: f64,
    y_asym: f64,
    y_ode: Option<f64>,
    y_rh: Option<f64>,
    abs_ode_asym: Option<f64>,
    abs_rh_asym: Option<f64>,
    abs_ode_rh: Option<f64>,
    note: String,
}

#[derive(Debug, Clone, Serialize)]
struct SlopeFit {
    #[serde(rename = "T")]
    t: f64,
    quantity: &'static str,
    slope: Option<f64>,
    points: usize,
}

fn compare(cfg: &RunConfig) -> Res<String> {
    let grids = ode_grids(cfg)?;
    let rows: Vec<CompareRow> = par_map(cfg.jobs, &points(cfg), |&(x, t)| {
        let y_asym = y_leading(x, t).map_err(|e| EngineFailure::at(e, Some(x), Some(t)))?;
        let grid = grids.iter().find(|g| g.t == t).expect("one grid per T");
        let y_ode = match jet_at(grid, x) {
            Ok(j) => Some(j.y),
            Err(e) if out_of_domain(&e) => None,
            Err(e) => return Err(EngineFailure::at(e, Some(x), Some(t))),
        };
        let y_rh = match rh_evaluate(x, t, &cfg.rh) {
            Ok(d) => Some(d.y),
            Err(e) if out_of_domain(&e) => {
                debug!("rh skipped at x = {x}, T = {t}: {e}");
                None
            }
            Err(e) => return Err(EngineFailure::at(e, Some(x), Some(t))),
        };
        let diff = |a: Option<f64>, b: Option<f64>| a.zip(b).map(|(a, b)| (a - b).abs());
        Ok(CompareRow {
            x,
            t,
            y_asym,
            y_ode,
            y_rh,
            abs_ode_asym: diff(y_ode, Some(y_asym)),
            abs_rh_asym: diff(y_rh, Some(y_asym)),
            abs_ode_rh: diff(y_ode, y_rh),
            note: if y_ode.is_some() && y_rh.is_some() { String::new() } else { "no overlap".into() },
        })
    })
    .into_iter()
    .collect::<Res<_>>()?;

    let mut slopes = Vec::new();
    for &t in &cfg.t_values {
        let mine = || rows.iter().filter(move |r| r.t == t);
        for (quantity, pick) in [
            ("abs_rh_asym", (|r: &CompareRow| r.abs_rh_asym) as fn(&CompareRow) -> Option<f64>),
            ("abs_ode_asym", |r: &CompareRow| r.abs_ode_asym),
        ] {
            let pts: Vec<(f64, f64)> = mine().filter_map(|r| pick(r).map(|d| (r.x.abs(), d))).collect();
            slopes.push(SlopeFit { t, quantity, slope: loglog_slope(&pts), points: pts.len() });
        }
    }

    Ok(match cfg.format {
        Format::Csv => {
            let mut out = csv_header(cfg);
            out.push_str("x,T,y_asym,y_ode,y_rh,abs_ode_asym,abs_rh_asym,abs_ode_rh,note\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    f(r.x),
                    f(r.t),
                    f(r.y_asym),
                    opt(r.y_ode),
                    opt(r.y_rh),
                    opt(r.abs_ode_asym),
                    opt(r.abs_rh_asym),
                    opt(r.abs_ode_rh),
                    r.note
                );
            }
            for s in &slopes {
                let _ = writeln!(out, "# slope {} T={}: {} ({} points)", s.quantity, f(s.t), opt(s.slope), s.points);
            }
            out
        }
        Format::Json => pretty(json!({"config": cfg, "rows": rows, "slopes": slopes})),
        Format::Svg => {
            let mut series = Vec::new();
            for &t in &cfg.t_values {
                let mine: Vec<&CompareRow> = rows.iter().filter(|r| r.t == t).collect();
                let line = |label: &str, pick: &dyn Fn(&CompareRow) -> Option<f64>| Series {
                    label: format!("{label}, T = {t}"),
                    points: mine.iter().map(|r| (r.x, pick(r).unwrap_or(f64::NAN))).collect(),
                };
                series.push(line("y_asym", &|r| Some(r.y_asym)));
                series.push(line("y_ode", &|r| r.y_ode));
                series.push(line("y_rh", &|r| r.y_rh));
            }
            line_plot("engine comparison", "x", "y", &series, &metadata(cfg))
        }
    })
}

#[derive(Debug, Clone, Serialize)]
struct ScanCell {
    re: f64,
    im: f64,
    re_g: f64,
    sign: i8,
}

fn reg_scan(cfg: &RunConfig) -> Res<String> {
    let (x, t) = (cfg.xs()[0], cfg.t_values[0]);
    let fail = |e| EngineFailure::at(e, Some(x), Some(t));
    let g = solve_z0(x, t).map_err(fail)?;
    let n = cfg.scan.points;
    let hw = cfg.scan.half_width;
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        let im = hw - 2.0 * hw * i as f64 / (n - 1) as f64;
        for k in 0..n {
            let re = g.z0 - hw + 2.0 * hw * k as f64 / (n - 1) as f64;
            let z = Complex64::new(re, im);
            // Re g is continuous across the cut, where it vanishes
            let v = match g_eval(z, &g) {
                Ok(v) => v,
                Err(_) => g_eval_side(z, &g, CutSide::Plus).map_err(fail)?,
            };
            let sign = if v.re > 0.0 { 1 } else if v.re < 0.0 { -1 } else { 0 };
            cells.push(ScanCell { re, im, re_g: v.re, sign });
        }
    }
    let radii: Vec<f64> = (1..=40).map(|k| hw * k as f64 / 40.0).collect();
    let angles: Vec<f64> = (0..=28).map(|k| std::f64::consts::PI * k as f64 / 28.0).chain([LENS_ANGLE]).collect();
    let report: ReGBoundsReport = re_g_scan(&g, &radii, &angles);
    info!("reg-scan: c_lower {:.3e}, eps0 {:.4}", report.c_lower, report.eps0);
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = csv_header(cfg);
            let _ = writeln!(out, "# z0: {}", f(g.z0));
            let _ = writeln!(out, "# c_lower: {}", f(report.c_lower));
            let _ = writeln!(out, "# eps0: {}", f(report.eps0));
            out.push_str("re,im,re_g,sign\n");
            for c in &cells {
                let _ = writeln!(out, "{},{},{},{}", f(c.re), f(c.im), f(c.re_g), c.sign);
            }
            out
        }
        Format::Json => pretty(json!({"config": cfg, "z0": g.z0, "report": report, "grid": cells})),
        Format::Svg => {
            let tri: Vec<(f64, f64, f64)> = cells.iter().map(|c| (c.re, c.im, c.re_g)).collect();
            sign_map("sign of Re g (shaded: Re g > 0)", &tri, n, (g.z0, 0.0), &metadata(cfg))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_json;

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<(f64, f64)> = [10.0f64, 20.0, 40.0].iter().map(|&x| (x, 3.0 * x.powf(-2.0))).collect();
        assert!((loglog_slope(&pts).unwrap() + 2.0).abs() < 1e-12);
        assert_eq!(loglog_slope(&[(1.0, 1.0)]), None);
        assert_eq!(loglog_slope(&[(2.0, 1.0), (2.0, 3.0)]), None);
    }

    #[test]
    fn asym_rows_follow_the_cube_root() {
        let cfg = parse_json(r#"{"mode": "asym", "x_values": [1000, -1000, 1e6, -1e6]}"#).unwrap();
        let out = run(&cfg).unwrap();
        let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
        assert_eq!(rows.len(), 4);
        for r in rows {
            let v: Vec<f64> = r.split(',').map(|s| s.parse().unwrap()).collect();
            let want = -v[0].signum() * (6.0 * v[0].abs()).cbrt();
            assert!((v[3] - want).abs() <= 1e-10 * want.abs());
        }
    }

    #[test]
    fn failures_are_machine_readable() {
        let cfg = parse_json(r#"{"mode": "rh", "x_values": [5]}"#).unwrap();
        let e = run(&cfg).unwrap_err();
        assert_eq!(e.kind, "domain");
        let v: serde_json::Value = serde_json::from_str(&e.record()).unwrap();
        assert_eq!(v["error"]["x"], 5.0);
    }
}
