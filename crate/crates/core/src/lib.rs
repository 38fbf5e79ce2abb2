//! Biased binary opinion dynamics under the 2-choices rule.
//!
//! Every agent holds opinion `0` or `1`, where `1` is the superior opinion.
//! At each discrete step one uniformly chosen agent updates. With
//! probability `alpha` it adopts `1` outright. Otherwise it adopts the
//! majority among itself and two neighbours sampled with replacement. The
//! all-ones state is the only absorbing state, and the number of steps
//! needed to reach it is the consensus time.
//!
//! The crate is `no_std` with `alloc`. It contains:
//!
//! - [`topology`]: complete, random regular and Erdős–Rényi interaction graphs.
//! - [`protocol`]: the agent-level simulator.
//! - [`analysis`]: exact results for the complete-graph counting chain.
//!   This covers the transition kernel, exact mean consensus time, the
//!   drift ratio and its thresholds, and regime classification.
//! - [`montecarlo`]: seeded, executor-agnostic repeated trials and
//!   confidence intervals.
//!
//! Parallel execution, file formats and the command line live in the
//! `twochoice` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod logspace;
pub mod montecarlo;
pub mod numeric;
pub mod protocol;
pub mod rng;
pub mod topology;

pub use analysis::{
    classify_regime, critical_p, exact_consensus_time, f_alpha, g_alpha, kernel, lower_bound,
    stationary_points, threshold_report, visit_profile, AnalysisError, BirthDeathKernel,
    ExactTime, Regime, StationaryPoints, ThresholdReport, VisitProfile,
};
pub use montecarlo::{
    run_experiment, sweep, ConsensusStats, DegreeRule, EdgeRule, ExperimentError, ExperimentSpec,
    GraphRule, LogBase, SerialExecutor, SweepPoint, SweepSpec, TrialExecutor,
};
pub use protocol::{run_to_consensus, ModelParams, OpinionState, ParamError, RunOutcome};
pub use topology::{GraphKind, GraphTopology, TopologyError};
