//! Exact mean consensus time and expected visit counts.

use alloc::vec::Vec;
use core::f64::consts::LN_10;

use super::kernel::{kernel, BirthDeathKernel};
use super::{check_alpha, check_fraction, AnalysisError};
use crate::logspace::{log_add_exp, LogSum};
use crate::protocol::initial_ones;

/// A positive quantity held by its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExactTime {
    ln: f64,
}

impl ExactTime {
    pub fn from_ln(ln: f64) -> Self {
        Self { ln }
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    pub fn log10(&self) -> f64 {
        self.ln / LN_10
    }

    /// Linear value; `inf` once it leaves the `f64` range.
    pub fn value(&self) -> f64 {
        libm::exp(self.ln)
    }
}

/// Mean number of steps for the modified chain on `K_n` to go from
/// `⌈p·n⌉` ones to `n`.
///
/// Uses first-step analysis for the time `S(k)` to move from `k` to `k+1`:
/// `S(0) = 1/α` and `S(k) = 1/up[k] + (down[k]/up[k]) S(k-1)`. The result is
/// `Σ_{k ≥ ⌈pn⌉} S(k)`, accumulated in log space.
pub fn exact_consensus_time(n: usize, alpha: f64, p: f64) -> Result<ExactTime, AnalysisError> {
    check_fraction(p)?;
    exact_consensus_time_from(n, alpha, initial_ones(n, p))
}

/// As [`exact_consensus_time`], from an explicit start state.
pub fn exact_consensus_time_from(
    n: usize,
    alpha: f64,
    start: usize,
) -> Result<ExactTime, AnalysisError> {
    let k = kernel(n, alpha)?;
    if start > n {
        return Err(AnalysisError::InvalidStart { start, n });
    }
    let mut total = LogSum::new();
    let mut log_s = -libm::log(alpha);
    if start == 0 {
        total.add_log(log_s);
    }
    for i in 1..n {
        let log_up = libm::log(k.up[i]);
        log_s = log_add_exp(-log_up, k.log_ratio(i) + log_s);
        if i >= start {
            total.add_log(log_s);
        }
    }
    Ok(ExactTime::from_ln(total.ln()))
}

/// Expected down-jump and visit counts for a start state `x`, in log space.
#[derive(Debug, Clone, PartialEq)]
pub struct VisitProfile {
    pub n: usize,
    pub alpha: f64,
    pub start: usize,
    /// `ln E_x[ζ_k]`, where `ζ_k` counts jumps `k → k-1`. Indexed `0..=n`.
    pub log_zeta: Vec<f64>,
    /// `ln E_x[Z_k]`, where `Z_k` counts visits to `k` before absorption.
    /// Entry `n` holds the single absorbing visit (`ln 1 = 0`).
    pub log_visits: Vec<f64>,
}

/// Visit profile from start state `start`.
///
/// With `ρ_i = down[i]/up[i]` and `ζ_n = 0`:
///
/// ```text
/// E[ζ_k] = Σ_{t=k}^{n-1} Π_{i=k}^{t} ρ_i   = ρ_k (1 + E[ζ_{k+1}])   (k ≥ x)
/// E[ζ_k] = (Π_{i=k}^{x-1} ρ_i) E[ζ_x]      = ρ_k E[ζ_{k+1}]         (k < x)
/// E[Z_k] = 1{k ≥ x} + E[ζ_k] + E[ζ_{k+1}]
/// ```
pub fn visit_profile(n: usize, alpha: f64, start: usize) -> Result<VisitProfile, AnalysisError> {
    let k = kernel(n, alpha)?;
    profile_from_kernel(&k, start)
}

fn profile_from_kernel(k: &BirthDeathKernel, start: usize) -> Result<VisitProfile, AnalysisError> {
    let n = k.n;
    if start > n {
        return Err(AnalysisError::InvalidStart { start, n });
    }
    let mut log_zeta = alloc::vec![f64::NEG_INFINITY; n + 1];
    for i in (0..n).rev() {
        let above = log_zeta[i + 1];
        log_zeta[i] = k.log_ratio(i) + if i >= start { log_add_exp(0.0, above) } else { above };
    }
    let mut log_visits = Vec::with_capacity(n + 1);
    for i in 0..n {
        let jumps = log_add_exp(log_zeta[i], log_zeta[i + 1]);
        log_visits.push(if i >= start { log_add_exp(0.0, jumps) } else { jumps });
    }
    log_visits.push(0.0);
    Ok(VisitProfile { n, alpha: k.alpha, start, log_zeta, log_visits })
}

/// Mean consensus time from visit counts: `Σ_{k<n} E[Z_k] / (1 - stay[k])`.
pub fn master_relation_time(profile: &VisitProfile) -> Result<ExactTime, AnalysisError> {
    let k = kernel(profile.n, profile.alpha)?;
    let total: LogSum = (0..profile.n)
        .map(|i| profile.log_visits[i] - libm::log(k.exit(i)))
        .collect();
    Ok(ExactTime::from_ln(total.ln()))
}

/// `n · ln(n - ⌈pn⌉ + 1) / (2 max(α, 1 - α))`, a lower bound on the exact
/// mean consensus time.
pub fn lower_bound(n: usize, alpha: f64, p: f64) -> Result<f64, AnalysisError> {
    if n == 0 {
        return Err(AnalysisError::InvalidSize);
    }
    check_alpha(alpha)?;
    check_fraction(p)?;
    let x = initial_ones(n, p);
    let nf = n as f64;
    Ok(nf * libm::log((n - x + 1) as f64) / (2.0 * alpha.max(1.0 - alpha)))
}
