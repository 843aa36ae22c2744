//! Sampled solutions and interpolation between nodes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Pi2Error, Result};
use crate::lax::{y_xxxx_from_equation, Jet4};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineTag {
    Ode,
    Rh,
    Asymptotic,
}

/// y(x, T) on a window, with derivative jets at every node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionGrid {
    #[serde(rename = "T")]
    pub t: f64,
    pub nodes: Vec<f64>,
    pub jets: Vec<Jet4>,
    /// Collocation residual of the interval starting at each node (the last
    /// node repeats the value of the last interval).
    pub node_residuals: Vec<f64>,
    pub engine_tag: EngineTag,
    pub residual_norm: f64,
    pub boundary_l: f64,
}

/// Fifth derivative from differentiating the equation once.
pub fn y5_from_equation(j: &Jet4) -> f64 {
    240.0
        * (j.t * j.y_x
            - 1.0
            - 0.5 * j.y * j.y * j.y_x
            - (4.0 * j.y_x * j.y_xx + 2.0 * j.y * j.y_xxx) / 24.0)
}

/// Quintic Hermite interpolant from value, slope and curvature at both ends.
fn hermite5(t: f64, h: f64, f0: [f64; 3], f1: [f64; 3]) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
    let h3 = 0.5 * (t3 - 2.0 * t4 + t5);
    let h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h5 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    f0[0] * h0 + h * f0[1] * h1 + h * h * f0[2] * h2 + h * h * f1[2] * h3 + h * f1[1] * h4 + f1[0] * h5
}

impl SolutionGrid {
    pub fn lo(&self) -> f64 {
        self.nodes[0]
    }

    pub fn hi(&self) -> f64 {
        *self.nodes.last().expect("non-empty grid")
    }

    pub fn max_abs_pi2_residual(&self) -> f64 {
        self.jets.iter().map(|j| crate::lax::pi2_residual(j).abs()).fold(0.0, f64::max)
    }

    /// CSV with header `x,y,y_x,y_xx,y_xxx,residual`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,y_x,y_xx,y_xxx,residual\n");
        for (j, r) in self.jets.iter().zip(&self.node_residuals) {
            let _ = writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                j.x, j.y, j.y_x, j.y_xx, j.y_xxx, r
            );
        }
        out
    }
}

/// Interpolated jet at `x`; the fourth derivative comes from the equation,
/// so the returned jet has zero residual by construction.
pub fn jet_at(grid: &SolutionGrid, x: f64) -> Result<Jet4> {
    let (lo, hi) = (grid.lo(), grid.hi());
    if !(lo..=hi).contains(&x) {
        return Err(Pi2Error::Extrapolation { x, lo, hi });
    }
    let i = match grid.nodes.binary_search_by(|v| v.total_cmp(&x)) {
        Ok(k) => return Ok(grid.jets[k]),
        Err(k) => k - 1,
    };
    let (a, b) = (&grid.jets[i], &grid.jets[i + 1]);
    let h = grid.nodes[i + 1] - grid.nodes[i];
    let t = (x - grid.nodes[i]) / h;
    let da = [a.y, a.y_x, a.y_xx, a.y_xxx, a.y_xxxx, y5_from_equation(a)];
    let db = [b.y, b.y_x, b.y_xx, b.y_xxx, b.y_xxxx, y5_from_equation(b)];
    let comp = |k: usize| {
        hermite5(t, h, [da[k], da[k + 1], da[k + 2]], [db[k], db[k + 1], db[k + 2]])
    };
    let (y, y_x, y_xx, y_xxx) = (comp(0), comp(1), comp(2), comp(3));
    Ok(Jet4 {
        y,
        y_x,
        y_xx,
        y_xxx,
        y_xxxx: y_xxxx_from_equation(x, grid.t, y, y_x, y_xx),
        x,
        t: grid.t,
    })
}
