use thiserror::Error;

/// Errors produced by the numerical engines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Pi2Error {
    #[error("not a cubic: leading coefficient is zero")]
    NotACubic,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("on branch cut: {0}")]
    OnBranchCut(String),

    #[error("z0 branch degenerate: candidate roots {candidates:?}")]
    Z0BranchDegenerate { candidates: Vec<f64> },

    #[error("f not conformal here: {0}")]
    NotConformal(String),

    #[error("contour mismatch: {0}")]
    ContourMismatch(String),

    #[error("no convergence after {iterations} Newton iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("continuation stalled at T = {last_good_t} (target T = {target_t})")]
    ContinuationStalled { last_good_t: f64, target_t: f64 },

    #[error("ill-conditioned system (condition estimate {0:e})")]
    IllConditioned(f64),

    #[error("nonreal extraction: imaginary residue {0:e}")]
    NonrealExtraction(f64),

    #[error("extrapolation outside [{lo}, {hi}] requested at x = {x}")]
    Extrapolation { x: f64, lo: f64, hi: f64 },

    #[error("singular matrix")]
    Singular,
}

impl Pi2Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::NotACubic => "not_a_cubic",
            Self::Domain(_) => "domain",
            Self::OnBranchCut(_) => "on_branch_cut",
            Self::Z0BranchDegenerate { .. } => "z0_branch_degenerate",
            Self::NotConformal(_) => "not_conformal",
            Self::ContourMismatch(_) => "contour_mismatch",
            Self::NoConvergence { .. } => "no_convergence",
            Self::ContinuationStalled { .. } => "continuation_stalled",
            Self::IllConditioned(_) => "ill_conditioned",
            Self::NonrealExtraction(_) => "nonreal_extraction",
            Self::Extrapolation { .. } => "extrapolation",
            Self::Singular => "singular",
        }
    }
}

pub type Result<T> = std::result::Result<T, Pi2Error>;
