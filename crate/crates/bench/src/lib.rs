//! Shared inputs for the engine benchmarks in `benches/`.

use pi2_core::{BVPConfig, RhConfig};

/// `(x, T)` points where the RH engine is cheap and well inside its domain.
pub const RH_POINTS: [(f64, f64); 3] = [(25.0, 0.0), (100.0, 0.5), (-400.0, 1.0)];

/// A window small enough to solve in a few milliseconds.
pub fn small_window() -> BVPConfig {
    BVPConfig { l: 10.0, ..Default::default() }
}

pub fn dense_rh() -> RhConfig {
    RhConfig { dense: true, ..Default::default() }
}
