//! Log-domain arithmetic for sums and products of positive terms.
//!
//! Below the critical bias the expected consensus time grows like
//! `exp(Θ(n))`, which leaves the `f64` range near `n ≈ 1500`. Every
//! positive accumulation in [`crate::analysis`] therefore goes through
//! these helpers.

/// `ln(exp(a) + exp(b))`, exact at `-inf` operands.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    if hi == f64::INFINITY {
        return f64::INFINITY;
    }
    hi + libm::log1p(libm::exp(lo - hi))
}

/// `ln(Σ exp(x_i))` using the max-shift trick. Empty input gives `-inf`.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    let shifted: f64 = values.iter().map(|&v| libm::exp(v - max)).sum();
    max + libm::log(shifted)
}

/// Running log-domain sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSum {
    log: f64,
}

impl Default for LogSum {
    fn default() -> Self {
        Self::new()
    }
}

impl LogSum {
    pub const fn new() -> Self {
        Self { log: f64::NEG_INFINITY }
    }

    /// Adds `exp(log_term)`.
    #[inline]
    pub fn add_log(&mut self, log_term: f64) {
        self.log = log_add_exp(self.log, log_term);
    }

    /// Adds a non-negative linear-scale term.
    #[inline]
    pub fn add(&mut self, term: f64) {
        self.add_log(libm::log(term));
    }

    pub fn ln(&self) -> f64 {
        self.log
    }

    pub fn value(&self) -> f64 {
        libm::exp(self.log)
    }
}

impl core::iter::FromIterator<f64> for LogSum {
    /// Collects log-domain terms.
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = LogSum::new();
        for t in iter {
            acc.add_log(t);
        }
        acc
    }
}
