//! Agent-level simulation of the biased 2-choices dynamics.
//!
//! This is the original protocol. A regular update samples two neighbours
//! from `N_u` with replacement and never samples the updating agent
//! itself. The self-sampling variant used for exact analysis lives in
//! [`crate::analysis`].

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::rng::{rng_from_seed, SimRng};
use crate::topology::GraphTopology;

/// Default step budget for one run.
pub const DEFAULT_STEP_CAP: u64 = 10_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ParamError {
    #[error("bias alpha must lie in (0, 1], got {0}")]
    InvalidAlpha(f64),
    #[error("initial fraction p must lie in [0, 1), got {0}")]
    InvalidFraction(f64),
}

/// Bias `alpha ∈ (0, 1]` and initial superior fraction `p ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    alpha: f64,
    p: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, p: f64) -> Result<Self, ParamError> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(ParamError::InvalidAlpha(alpha));
        }
        if !(0.0..1.0).contains(&p) {
            return Err(ParamError::InvalidFraction(p));
        }
        Ok(Self { alpha, p })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Number of agents initially holding opinion 1, `⌈p·n⌉`.
///
/// Products within `1e-9` (relative) of an integer snap to it, so that
/// `0.7 · 10` gives 7 rather than 8.
pub fn initial_ones(n: usize, p: f64) -> usize {
    let x = p * n as f64;
    let nearest = libm::round(x);
    let count = if libm::fabs(x - nearest) <= 1e-9 * x.max(1.0) {
        nearest
    } else {
        libm::ceil(x)
    };
    (count.max(0.0) as usize).min(n)
}

/// Per-agent opinions with a maintained count of ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpinionState {
    opinions: Vec<u8>,
    ones: usize,
    clock: u64,
}

impl OpinionState {
    /// `⌈p·n⌉` agents, chosen uniformly at random, start with opinion 1.
    pub fn init<R: Rng + ?Sized>(graph: &GraphTopology, params: &ModelParams, rng: &mut R) -> Self {
        let n = graph.n();
        let ones = initial_ones(n, params.p);
        let mut order: Vec<u32> = (0..n as u32).collect();
        let (chosen, _) = order.partial_shuffle(rng, ones);
        let mut opinions = alloc::vec![0u8; n];
        for &u in chosen.iter() {
            opinions[u as usize] = 1;
        }
        Self { opinions, ones, clock: 0 }
    }

    pub fn init_seeded(graph: &GraphTopology, params: &ModelParams, seed: u64) -> Self {
        Self::init(graph, params, &mut rng_from_seed(seed))
    }

    pub fn from_opinions<I: IntoIterator<Item = bool>>(opinions: I) -> Self {
        let opinions: Vec<u8> = opinions.into_iter().map(u8::from).collect();
        let ones = opinions.iter().map(|&o| o as usize).sum();
        Self { opinions, ones, clock: 0 }
    }

    pub fn n(&self) -> usize {
        self.opinions.len()
    }

    pub fn ones_count(&self) -> usize {
        self.ones
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn opinion(&self, u: usize) -> bool {
        self.opinions[u] == 1
    }

    pub fn opinions(&self) -> impl Iterator<Item = bool> + '_ {
        self.opinions.iter().map(|&o| o == 1)
    }

    pub fn is_consensus(&self) -> bool {
        self.ones == self.opinions.len()
    }

    /// One asynchronous update of a uniformly chosen agent.
    ///
    /// The all-ones state is absorbing. Stepping it leaves the opinions
    /// unchanged and still advances the clock.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&mut self, graph: &GraphTopology, params: &ModelParams, rng: &mut R) {
        debug_assert_eq!(graph.n(), self.opinions.len());
        let u = rng.random_range(0..self.opinions.len());
        let current = self.opinions[u];
        let next = if rng.random::<f64>() < params.alpha {
            1
        } else {
            let nb = graph.neighbors(u);
            if nb.is_empty() {
                // No sample to take a majority over.
                current
            } else {
                let a = nb[rng.random_range(0..nb.len())] as usize;
                let b = nb[rng.random_range(0..nb.len())] as usize;
                u8::from(current + self.opinions[a] + self.opinions[b] >= 2)
            }
        };
        if next != current {
            self.opinions[u] = next;
            if next == 1 {
                self.ones += 1;
            } else {
                self.ones -= 1;
            }
        }
        self.clock += 1;
    }
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    /// Consensus reached after `steps` updates.
    Absorbed { steps: u64 },
    /// The step budget ran out first.
    Capped { steps: u64, ones_count: usize },
}

impl RunOutcome {
    pub fn absorption_time(&self) -> Option<u64> {
        match *self {
            RunOutcome::Absorbed { steps } => Some(steps),
            RunOutcome::Capped { .. } => None,
        }
    }

    pub fn is_capped(&self) -> bool {
        matches!(self, RunOutcome::Capped { .. })
    }
}

/// Snapshot handed to checkpoint callbacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    pub steps: u64,
    pub ones_count: usize,
}

/// Initialises from `seed` and runs until consensus or `step_cap` steps.
pub fn run_to_consensus(
    graph: &GraphTopology,
    params: &ModelParams,
    seed: u64,
    step_cap: u64,
) -> RunOutcome {
    let mut rng = rng_from_seed(seed);
    let mut state = OpinionState::init(graph, params, &mut rng);
    run_state(&mut state, graph, params, &mut rng, step_cap, u64::MAX, |_| {})
}

/// Advances `state` until consensus or until its clock reaches `step_cap`.
/// `on_checkpoint` fires every `every` steps.
pub fn run_state<F: FnMut(Checkpoint)>(
    state: &mut OpinionState,
    graph: &GraphTopology,
    params: &ModelParams,
    rng: &mut SimRng,
    step_cap: u64,
    every: u64,
    mut on_checkpoint: F,
) -> RunOutcome {
    let every = every.max(1);
    let mut next_checkpoint = state.clock.saturating_add(every);
    while !state.is_consensus() {
        if state.clock >= step_cap {
            return RunOutcome::Capped { steps: state.clock, ones_count: state.ones };
        }
        state.step(graph, params, rng);
        if state.clock == next_checkpoint {
            on_checkpoint(Checkpoint { steps: state.clock, ones_count: state.ones });
            next_checkpoint = next_checkpoint.saturating_add(every);
        }
    }
    RunOutcome::Absorbed { steps: state.clock }
}
