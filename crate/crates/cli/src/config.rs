//! Run configuration: an optional JSON file overlaid by command-line flags.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use pi2_core::{BVPConfig, RhConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Asym,
    Ode,
    Rh,
    Compare,
    RegScan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Svg,
}

/// `start:end:count`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XRange {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl XRange {
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("x-range `{s}` is not of the form start:end:count"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("x-range `{s}`: `{p}`: {e}"));
        let count = parts[2].trim().parse::<usize>().map_err(|e| format!("x-range `{s}`: count: {e}"))?;
        Ok(Self { start: num(parts[0])?, end: num(parts[1])?, count })
    }

    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            n => (0..n)
                .map(|k| if k + 1 == n { self.end } else { self.start + (self.end - self.start) * k as f64 / (n - 1) as f64 })
                .collect(),
        }
    }
}

/// Sampling box for the Re g sign map, centred on z0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanConfig {
    pub points: usize,
    pub half_width: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self { points: 81, half_width: 4.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    pub x_values: Vec<f64>,
    pub x_range: Option<XRange>,
    #[serde(rename = "T_values")]
    pub t_values: Vec<f64>,
    pub bvp: BVPConfig,
    pub rh: RhConfig,
    pub scan: ScanConfig,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    /// Not written to output metadata: results never depend on it.
    #[serde(skip_serializing)]
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: None,
            x_values: Vec::new(),
            x_range: None,
            t_values: vec![0.0],
            bvp: BVPConfig::default(),
            rh: RhConfig::default(),
            scan: ScanConfig::default(),
            output_path: None,
            format: Format::Csv,
            jobs: 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pi2", version, about = "Pole-free P_I^2 solution: asymptotics, ODE and RH engines")]
pub struct Args {
    /// JSON run configuration; flags given here override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// x values, repeated or comma separated.
    #[arg(long = "x", value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    /// Equispaced x values as start:end:count.
    #[arg(long = "x-range", allow_hyphen_values = true, value_parser = XRange::parse)]
    pub x_range: Option<XRange>,
    /// T values, repeated or comma separated.
    #[arg(long = "T", value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Vec<f64>,
    /// Worker threads for independent grid points.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// ODE window half-width.
    #[arg(long = "L")]
    pub l: Option<f64>,
    #[arg(long)]
    pub mesh_density: Option<f64>,
    #[arg(long)]
    pub stages: Option<usize>,
    #[arg(long)]
    pub newton_tol: Option<f64>,

    /// Disk radius of the RH contour.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub circle_nodes: Option<usize>,
    #[arg(long)]
    pub panel_nodes: Option<usize>,
    #[arg(long)]
    pub neumann_order: Option<usize>,
    /// Solve the RH integral equation densely.
    #[arg(long)]
    pub dense: bool,
    #[arg(long)]
    pub x_min: Option<f64>,

    /// Grid points per side of the Re g map.
    #[arg(long)]
    pub scan_points: Option<usize>,
    #[arg(long)]
    pub scan_half_width: Option<f64>,
}

/// Configuration errors carry enough context to find the bad input.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn load_file(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| ConfigError(format!("{}: {}", path.display(), e.0)))
}

pub fn parse_json(text: &str) -> Result<RunConfig, ConfigError> {
    serde_json::from_str(text).map_err(|e| ConfigError(format!("line {} column {}: {e}", e.line(), e.column())))
}

/// Merge flags over the file (or defaults) and validate.
pub fn resolve(args: Args) -> Result<RunConfig, ConfigError> {
    let mut cfg = match &args.config {
        Some(p) => load_file(p)?,
        None => RunConfig::default(),
    };
    if args.mode.is_some() {
        cfg.mode = args.mode;
    }
    if !args.x.is_empty() {
        cfg.x_values = args.x;
    }
    if args.x_range.is_some() {
        cfg.x_range = args.x_range;
    }
    if !args.t.is_empty() {
        cfg.t_values = args.t;
    }
    if let Some(j) = args.jobs {
        cfg.jobs = j;
    }
    if let Some(f) = args.format {
        cfg.format = f;
    }
    if args.output.is_some() {
        cfg.output_path = args.output;
    }
    macro_rules! overlay {
        ($($src:ident => $dst:expr),* $(,)?) => {
            $(if let Some(v) = args.$src { $dst = v; })*
        };
    }
    overlay!(
        l => cfg.bvp.l,
        mesh_density => cfg.bvp.mesh_density,
        stages => cfg.bvp.stages,
        newton_tol => cfg.bvp.newton_tol,
        delta => cfg.rh.delta,
        circle_nodes => cfg.rh.circle_nodes,
        panel_nodes => cfg.rh.panel_nodes,
        neumann_order => cfg.rh.neumann_order,
        x_min => cfg.rh.x_min,
        scan_points => cfg.scan.points,
        scan_half_width => cfg.scan.half_width,
    );
    if args.dense {
        cfg.rh.dense = true;
    }
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    pub fn mode(&self) -> Mode {
        self.mode.expect("validated config has a mode")
    }

    /// Explicit values followed by the range, in the order given.
    pub fn xs(&self) -> Vec<f64> {
        let mut v = self.x_values.clone();
        if let Some(r) = &self.x_range {
            v.extend(r.values());
        }
        v
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let err = |s: &str| Err(ConfigError(s.to_string()));
        let Some(mode) = self.mode else {
            return err("mode is required (asym, ode, rh, compare, reg-scan)");
        };
        if matches!(self.x_range, Some(r) if r.count == 0) {
            return err("x-range count must be at least 1");
        }
        if self.t_values.is_empty() {
            return err("T_values must not be empty");
        }
        let xs = self.xs();
        if mode != Mode::Ode && xs.is_empty() {
            return err("this mode needs x values (--x or --x-range)");
        }
        if mode != Mode::Ode && xs.contains(&0.0) {
            return err("x = 0 is only allowed in ode mode");
        }
        if mode == Mode::RegScan && (xs.len() != 1 || self.t_values.len() != 1) {
            return err("reg-scan takes exactly one x and one T");
        }
        if mode == Mode::RegScan && (self.scan.points < 2 || !(self.scan.half_width > 0.0)) {
            return err("scan needs at least 2 points and a positive half width");
        }
        if xs.iter().chain(&self.t_values).any(|v| !v.is_finite()) {
            return err("x and T values must be finite");
        }
        if self.jobs == 0 {
            return err("jobs must be at least 1");
        }
        self.bvp.validate().map_err(|e| ConfigError(format!("bvp: {e}")))?;
        self.rh.validate().map_err(|e| ConfigError(format!("rh: {e}")))?;
        Ok(())
    }
}
