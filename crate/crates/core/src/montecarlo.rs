//! Repeated independent runs and their summary statistics.
//!
//! Trial `i` of an experiment draws its graph and its dynamics from streams
//! seeded by `(master_seed, i)` alone. Any [`TrialExecutor`] that returns
//! results in trial order therefore produces identical statistics,
//! whatever its worker count.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::protocol::{run_state, ModelParams, OpinionState, RunOutcome, DEFAULT_STEP_CAP};
use crate::rng::{stream_seed, trial_rng, Purpose};
use crate::topology::{GraphKind, GraphTopology, TopologyError};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.96;

/// Base of the logarithm in `n`-dependent graph rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
    Ten,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => libm::log(x),
            LogBase::Two => libm::log2(x),
            LogBase::Ten => libm::log10(x),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LogBase::Natural => "e",
            LogBase::Two => "2",
            LogBase::Ten => "10",
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeRule {
    Fixed(usize),
    /// `d = ⌈log n⌉`.
    CeilLog(LogBase),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeRule {
    Fixed(f64),
    /// `p_edge = log n / n`, the connectivity threshold.
    ConnectivityThreshold(LogBase),
}

/// Graph family whose parameters may depend on `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphRule {
    Complete,
    RandomRegular(DegreeRule),
    ErdosRenyi(EdgeRule),
}

impl GraphRule {
    pub fn resolve(&self, n: usize) -> GraphKind {
        match *self {
            GraphRule::Complete => GraphKind::Complete,
            GraphRule::RandomRegular(DegreeRule::Fixed(degree)) => GraphKind::RandomRegular { degree },
            GraphRule::RandomRegular(DegreeRule::CeilLog(base)) => {
                let l = base.log(n as f64);
                // Exact powers of the base must not round up.
                let degree = libm::ceil(l - 1e-12).max(0.0) as usize;
                GraphKind::RandomRegular { degree }
            }
            GraphRule::ErdosRenyi(EdgeRule::Fixed(edge_probability)) => {
                GraphKind::ErdosRenyi { edge_probability }
            }
            GraphRule::ErdosRenyi(EdgeRule::ConnectivityThreshold(base)) => {
                let edge_probability = (base.log(n as f64) / n as f64).clamp(0.0, 1.0);
                GraphKind::ErdosRenyi { edge_probability }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("invalid experiment: {0}")]
    InvalidSpec(&'static str),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("all {capped} trials hit the step cap")]
    AllCapped { capped: usize },
}

/// One point of an experiment: fixed graph kind, size and parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub n: usize,
    pub graph: GraphKind,
    pub params: ModelParams,
    pub trials: u64,
    pub master_seed: u64,
    /// Draw a fresh random graph for every trial. When unset, every trial
    /// shares the graph of trial 0. Complete graphs are always built once.
    pub regenerate_graph_per_trial: bool,
    pub step_cap: u64,
}

impl ExperimentSpec {
    pub fn new(n: usize, graph: GraphKind, params: ModelParams, trials: u64, master_seed: u64) -> Self {
        Self {
            n,
            graph,
            params,
            trials,
            master_seed,
            regenerate_graph_per_trial: true,
            step_cap: DEFAULT_STEP_CAP,
        }
    }

    fn validate(&self) -> Result<(), ExperimentError> {
        if self.trials == 0 {
            return Err(ExperimentError::InvalidSpec("trials must be at least 1"));
        }
        if self.step_cap == 0 {
            return Err(ExperimentError::InvalidSpec("step cap must be positive"));
        }
        Ok(())
    }

    fn shares_graph(&self) -> bool {
        !self.graph.is_random() || !self.regenerate_graph_per_trial
    }

    /// Graph used by trial `trial` when graphs are regenerated.
    pub fn trial_graph(&self, trial: u64) -> Result<GraphTopology, TopologyError> {
        self.graph.build(self.n, stream_seed(self.master_seed, trial, Purpose::Graph))
    }

    /// Runs trial `trial` on `graph`.
    pub fn run_on(&self, graph: &GraphTopology, trial: u64) -> RunOutcome {
        let mut rng = trial_rng(self.master_seed, trial, Purpose::Dynamics);
        let mut state = OpinionState::init(graph, &self.params, &mut rng);
        run_state(&mut state, graph, &self.params, &mut rng, self.step_cap, u64::MAX, |_| {})
    }
}

pub type TrialResult = Result<RunOutcome, TopologyError>;

/// Runs trial indices `0..trials`, returning results in index order.
pub trait TrialExecutor {
    fn map_trials(&self, trials: u64, job: &(dyn Fn(u64) -> TrialResult + Sync)) -> Vec<TrialResult>;
}

/// Runs trials one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct SerialExecutor;

impl TrialExecutor for SerialExecutor {
    fn map_trials(&self, trials: u64, job: &(dyn Fn(u64) -> TrialResult + Sync)) -> Vec<TrialResult> {
        (0..trials).map(job).collect()
    }
}

/// Summary of an experiment's trials.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusStats {
    /// Every trial outcome, in trial order, including capped runs.
    pub outcomes: Vec<RunOutcome>,
    /// Trials that reached consensus; the statistics below cover only these.
    pub completed: usize,
    pub capped_count: usize,
    pub mean: f64,
    /// Sample standard deviation, 0 with a single completed trial.
    pub std_dev: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl ConsensusStats {
    pub fn from_outcomes(outcomes: Vec<RunOutcome>) -> Result<Self, ExperimentError> {
        let times: Vec<f64> = outcomes
            .iter()
            .filter_map(RunOutcome::absorption_time)
            .map(|t| t as f64)
            .collect();
        let completed = times.len();
        let capped_count = outcomes.len() - completed;
        if completed == 0 {
            return Err(ExperimentError::AllCapped { capped: capped_count });
        }
        let m = completed as f64;
        let mean = times.iter().sum::<f64>() / m;
        let std_dev = if completed > 1 {
            let ss: f64 = times.iter().map(|t| (t - mean) * (t - mean)).sum();
            libm::sqrt(ss / (m - 1.0))
        } else {
            0.0
        };
        let half = Z_95 * std_dev / libm::sqrt(m);
        Ok(Self {
            outcomes,
            completed,
            capped_count,
            mean,
            std_dev,
            ci_low: mean - half,
            ci_high: mean + half,
        })
    }

    /// Absorption times of completed trials, in trial order.
    pub fn times(&self) -> impl Iterator<Item = u64> + '_ {
        self.outcomes.iter().filter_map(RunOutcome::absorption_time)
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        self.std_dev / libm::sqrt(self.completed as f64)
    }

    pub fn ci_half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }
}

/// Runs every trial of `spec` through `executor`.
pub fn run_experiment<E: TrialExecutor + ?Sized>(
    spec: &ExperimentSpec,
    executor: &E,
) -> Result<ConsensusStats, ExperimentError> {
    spec.validate()?;
    let results = if spec.shares_graph() {
        let graph = spec.trial_graph(0)?;
        executor.map_trials(spec.trials, &|i| Ok(spec.run_on(&graph, i)))
    } else {
        executor.map_trials(spec.trials, &|i| {
            let graph = spec.trial_graph(i)?;
            Ok(spec.run_on(&graph, i))
        })
    };
    let outcomes = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    ConsensusStats::from_outcomes(outcomes)
}

/// Settings shared by all points of a sweep over `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub rule: GraphRule,
    pub params: ModelParams,
    pub trials: u64,
    pub master_seed: u64,
    pub regenerate_graph_per_trial: bool,
    pub step_cap: u64,
}

impl SweepSpec {
    pub fn new(rule: GraphRule, params: ModelParams, trials: u64, master_seed: u64) -> Self {
        Self {
            rule,
            params,
            trials,
            master_seed,
            regenerate_graph_per_trial: true,
            step_cap: DEFAULT_STEP_CAP,
        }
    }

    pub fn at(&self, n: usize) -> ExperimentSpec {
        ExperimentSpec {
            n,
            graph: self.rule.resolve(n),
            params: self.params,
            trials: self.trials,
            master_seed: self.master_seed,
            regenerate_graph_per_trial: self.regenerate_graph_per_trial,
            step_cap: self.step_cap,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub n: usize,
    pub graph: GraphKind,
    pub result: Result<ConsensusStats, ExperimentError>,
}

impl SweepPoint {
    /// `mean / n`, when the point succeeded.
    pub fn normalized_mean(&self) -> Option<f64> {
        self.result.as_ref().ok().map(|s| s.mean / self.n as f64)
    }
}

/// One experiment per `n`, re-deriving graph parameters at each size.
/// A failing point is recorded in its [`SweepPoint`] and the sweep
/// continues.
pub fn sweep<E: TrialExecutor + ?Sized>(
    spec: &SweepSpec,
    n_values: &[usize],
    executor: &E,
) -> Result<Vec<SweepPoint>, ExperimentError> {
    if n_values.is_empty() {
        return Err(ExperimentError::InvalidSpec("sweep needs at least one n"));
    }
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::InvalidSpec("n values must be strictly increasing"));
    }
    Ok(n_values
        .iter()
        .map(|&n| {
            let point = spec.at(n);
            SweepPoint { n, graph: point.graph, result: run_experiment(&point, executor) }
        })
        .collect())
}
