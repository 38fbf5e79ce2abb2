//! Exact analysis of the complete-graph counting chain.
//!
//! On `K_n` the number of agents holding opinion 1 is a birth–death chain
//! on `{0, …, n}` with `n` absorbing. Everything here uses the kernel in
//! which a regular update may sample the updating agent. It differs from
//! the simulated protocol by `o(1)` per transition.

use thiserror::Error;

mod drift;
mod exact;
mod kernel;

pub use drift::{
    classify_regime, critical_p, f_alpha, g_alpha, stationary_points, threshold_report, Regime,
    StationaryPoints, ThresholdReport, CRITICAL_BIAS, DEFAULT_ROOT_TOL,
};
pub use exact::{
    exact_consensus_time, exact_consensus_time_from, lower_bound, master_relation_time,
    visit_profile, ExactTime,
    VisitProfile,
};
pub use kernel::{kernel, BirthDeathKernel};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum AnalysisError {
    #[error("chain size must be at least 1")]
    InvalidSize,
    #[error("bias alpha {0} is outside the admissible range")]
    InvalidAlpha(f64),
    #[error("initial fraction {0} is outside [0, 1)")]
    InvalidFraction(f64),
    #[error("start state {start} exceeds chain size {n}")]
    InvalidStart { start: usize, n: usize },
    #[error("x = {x} lies outside [{low}, 1)")]
    OutOfDomain { x: f64, low: f64 },
    #[error("alpha = {0} is not below 1/9: there is no critical initial fraction")]
    NoThreshold(f64),
    #[error(transparent)]
    Root(#[from] crate::numeric::RootError),
}

fn check_alpha(alpha: f64) -> Result<(), AnalysisError> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(AnalysisError::InvalidAlpha(alpha))
    }
}

fn check_fraction(p: f64) -> Result<(), AnalysisError> {
    if (0.0..1.0).contains(&p) {
        Ok(())
    } else {
        Err(AnalysisError::InvalidFraction(p))
    }
}
