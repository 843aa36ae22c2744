//! A small self-contained SVG writer for line plots and sign maps.

use std::fmt::Write;

const W: f64 = 720.0;
const H: f64 = 480.0;
const PAD: f64 = 56.0;
const PALETTE: [&str; 6] = ["#1f5fa8", "#c0392b", "#2e8b57", "#8e44ad", "#d68910", "#34495e"];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn bounds<'a>(pts: impl Iterator<Item = &'a (f64, f64)>) -> Option<(f64, f64, f64, f64)> {
    let mut b: Option<(f64, f64, f64, f64)> = None;
    for &(x, y) in pts.filter(|(x, y)| x.is_finite() && y.is_finite()) {
        b = Some(match b {
            None => (x, x, y, y),
            Some((a, c, d, e)) => (a.min(x), c.max(x), d.min(y), e.max(y)),
        });
    }
    b.map(|(x0, x1, y0, y1)| {
        let pad = |a: f64, b: f64| if b > a { (a, b) } else { (a - 1.0, b + 1.0) };
        let (x0, x1) = pad(x0, x1);
        let (y0, y1) = pad(y0, y1);
        (x0, x1, y0, y1)
    })
}

fn num(v: f64) -> String {
    format!("{v:.2}")
}

fn header(out: &mut String, title: &str, comment: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let mut comment = comment.to_string();
    while comment.contains("--") {
        comment = comment.replace("--", "- -");
    }
    let _ = writeln!(out, "<!-- {comment} -->");
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title));
}

fn frame(out: &mut String, b: (f64, f64, f64, f64), xlabel: &str, ylabel: &str) {
    let (x0, x1, y0, y1) = b;
    let _ = writeln!(
        out,
        r##"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="#444"/>"##,
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    let _ = writeln!(out, r#"<text x="{PAD}" y="{}">{}</text>"#, H - PAD + 16.0, num(x0));
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, W - PAD, H - PAD + 16.0, num(x1));
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, PAD - 4.0, H - PAD, num(y0));
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, PAD - 4.0, PAD + 10.0, num(y1));
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, W / 2.0, H - 16.0, escape(xlabel));
    let _ = writeln!(
        out,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(ylabel)
    );
}

fn map(b: (f64, f64, f64, f64), x: f64, y: f64) -> (f64, f64) {
    let (x0, x1, y0, y1) = b;
    (PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD), H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Polylines of several series on shared axes; non-finite points break a line.
pub fn line_plot(title: &str, xlabel: &str, ylabel: &str, series: &[Series], comment: &str) -> String {
    let mut out = String::new();
    header(&mut out, title, comment);
    let b = bounds(series.iter().flat_map(|s| s.points.iter())).unwrap_or((-1.0, 1.0, -1.0, 1.0));
    frame(&mut out, b, xlabel, ylabel);
    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut runs: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for &(x, y) in &s.points {
            if x.is_finite() && y.is_finite() {
                runs.last_mut().unwrap().push(map(b, x, y));
            } else if !runs.last().unwrap().is_empty() {
                runs.push(Vec::new());
            }
        }
        for run in runs.iter().filter(|r| !r.is_empty()) {
            let pts: Vec<String> = run.iter().map(|(x, y)| format!("{},{}", num(*x), num(*y))).collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                pts.join(" ")
            );
            if run.len() == 1 {
                let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="2.5" fill="{color}"/>"#, num(run[0].0), num(run[0].1));
            }
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            W - PAD - 150.0,
            PAD + 16.0 + 16.0 * k as f64,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Cells shaded where `value > 0`, on a regular `n x n` grid given row by
/// row as `(re, im, value)`.
pub fn sign_map(title: &str, cells: &[(f64, f64, f64)], n: usize, marker: (f64, f64), comment: &str) -> String {
    let mut out = String::new();
    header(&mut out, title, comment);
    let b = bounds(cells.iter().map(|(x, y, _)| (*x, *y)).collect::<Vec<_>>().iter()).unwrap_or((-1.0, 1.0, -1.0, 1.0));
    frame(&mut out, b, "Re zeta", "Im zeta");
    let cw = (W - 2.0 * PAD) / (n as f64 - 1.0).max(1.0);
    let ch = (H - 2.0 * PAD) / (n as f64 - 1.0).max(1.0);
    for &(x, y, _) in cells.iter().filter(|c| c.2 > 0.0) {
        let (px, py) = map(b, x, y);
        let _ = writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#b0b0b0"/>"##,
            num(px - cw / 2.0),
            num(py - ch / 2.0),
            num(cw),
            num(ch)
        );
    }
    let (mx, my) = map(b, marker.0, marker.1);
    let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#, num(mx), num(my));
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_plot_is_well_formed() {
        let s = Series { label: "y<ode>".into(), points: vec![(0.0, 1.0), (1.0, f64::NAN), (2.0, 3.0), (3.0, 2.0)] };
        let svg = line_plot("t", "x", "y", &[s], "cfg");
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("y&lt;ode&gt;"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 1);
    }

    #[test]
    fn sign_map_shades_positive_cells() {
        let cells = vec![(0.0, 0.0, 1.0), (1.0, 0.0, -1.0), (0.0, 1.0, 0.5), (1.0, 1.0, -2.0)];
        let svg = sign_map("g", &cells, 2, (0.5, 0.5), "a---b");
        assert_eq!(svg.matches("fill=\"#b0b0b0\"").count(), 2);
        assert!(!svg.contains("--b"));
    }

    #[test]
    fn degenerate_bounds_are_padded() {
        let s = Series { label: "one".into(), points: vec![(5.0, 5.0)] };
        let svg = line_plot("t", "x", "y", &[s], "");
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
