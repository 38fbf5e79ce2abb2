//! The drift ratio `f_α`, its fixed points, and the critical threshold.

use core::fmt;

use super::{check_alpha, check_fraction, AnalysisError};
use crate::numeric::bisect;

/// Bias separating the two fast/slow behaviours.
pub const CRITICAL_BIAS: f64 = 1.0 / 9.0;

/// Default absolute tolerance for [`critical_p`].
pub const DEFAULT_ROOT_TOL: f64 = 1e-10;

/// Discriminants this close below zero are rounding noise at `α = 1/9`.
const DISCRIMINANT_CLAMP: f64 = 1e-14;

const BRACKET_LOW_OFFSET: f64 = 1e-9;
const BRACKET_HIGH_OFFSET: f64 = 1e-12;

/// Ratio of down-step to up-step probability at occupancy fraction `x`:
///
/// ```text
/// f_α(x) = (1 - α) x (1 - x) / (α + (1 - α) x²)
/// ```
#[inline]
pub fn f_alpha(x: f64, alpha: f64) -> f64 {
    (1.0 - alpha) * x * (1.0 - x) / (alpha + (1.0 - alpha) * x * x)
}

/// Maximiser and maximum of `f_α`, and the points where it crosses 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoints {
    pub alpha: f64,
    /// `x_α`, the unique maximiser of `f_α` on `[0, 1]`.
    pub x_star: f64,
    /// `r_α = f_α(x_α)`.
    pub r: f64,
    /// `(x̲_α, x̄_α)`, present only for `α ≤ 1/9`.
    pub crossings: Option<(f64, f64)>,
}

impl StationaryPoints {
    pub fn x_low(&self) -> Option<f64> {
        self.crossings.map(|c| c.0)
    }

    pub fn x_high(&self) -> Option<f64> {
        self.crossings.map(|c| c.1)
    }
}

/// Closed-form stationary points for `0 < α < 1`.
pub fn stationary_points(alpha: f64) -> Result<StationaryPoints, AnalysisError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(AnalysisError::InvalidAlpha(alpha));
    }
    let q = alpha / (1.0 - alpha);
    let x_star = libm::sqrt(q * q + q) - q;
    let r = f_alpha(x_star, alpha);
    let mut disc = 1.0 - 8.0 * q;
    if (-DISCRIMINANT_CLAMP..0.0).contains(&disc) {
        disc = 0.0;
    }
    let crossings = (disc >= 0.0).then(|| {
        let s = libm::sqrt(disc);
        (0.25 * (1.0 - s), 0.25 * (1.0 + s))
    });
    Ok(StationaryPoints { alpha, x_star, r, crossings })
}

fn low_bias_crossings(alpha: f64) -> Result<(f64, f64), AnalysisError> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(AnalysisError::InvalidAlpha(alpha));
    }
    if alpha >= CRITICAL_BIAS {
        return Err(AnalysisError::NoThreshold(alpha));
    }
    stationary_points(alpha)?
        .crossings
        .ok_or(AnalysisError::NoThreshold(alpha))
}

/// `g_α(x) = ∫_{x̲_α}^{x} ln f_α(t) dt` for `0 < α < 1/9` and `x̲_α ≤ x < 1`,
/// evaluated in closed form.
pub fn g_alpha(x: f64, alpha: f64) -> Result<f64, AnalysisError> {
    let (x_low, _) = low_bias_crossings(alpha)?;
    if !(x >= x_low && x < 1.0) {
        return Err(AnalysisError::OutOfDomain { x, low: x_low });
    }
    Ok(g_closed_form(x, alpha, x_low))
}

fn g_closed_form(x: f64, alpha: f64, x_low: f64) -> f64 {
    let beta = 1.0 - alpha;
    let s = libm::sqrt(beta / alpha);
    let first = x * libm::log(beta * x / (alpha + beta * x * x));
    let second = if x == 0.0 { 0.0 } else { (1.0 - x) * libm::log1p(-x) };
    first - second + libm::log1p(-x_low) - 2.0 / s * (libm::atan(s * x) - libm::atan(s * x_low))
}

/// Critical initial fraction `p_c(α)`: the root of `g_α` in `(x̄_α, 1)`,
/// found by bisection to absolute tolerance `tol`.
///
/// `g_α` decreases on `(x̄_α, 1)`, where its derivative `ln f_α` is
/// negative, so the root is unique.
pub fn critical_p(alpha: f64, tol: f64) -> Result<f64, AnalysisError> {
    let (x_low, x_high) = low_bias_crossings(alpha)?;
    let lo = x_high + BRACKET_LOW_OFFSET;
    let hi = 1.0 - BRACKET_HIGH_OFFSET;
    Ok(bisect(|x| g_closed_form(x, alpha, x_low), lo, hi, tol)?)
}

/// Asymptotic behaviour of the mean consensus time on complete graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `α > 1/9`: `Θ(n log n)` from any start.
    FastAnyP,
    /// `α < 1/9` and `p ≥ p_c(α)`: `Θ(n log n)`.
    FastAboveThreshold,
    /// `α < 1/9` and `p < p_c(α)`: `exp(Θ(n))`.
    SlowBelowThreshold,
    /// `α = 1/9` exactly, which the theory leaves open.
    Unclassified,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::FastAnyP => "FastAnyP",
            Regime::FastAboveThreshold => "FastAboveThreshold",
            Regime::SlowBelowThreshold => "SlowBelowThreshold",
            Regime::Unclassified => "Unclassified",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_regime(alpha: f64, p: f64) -> Result<Regime, AnalysisError> {
    check_alpha(alpha)?;
    check_fraction(p)?;
    Ok(if alpha > CRITICAL_BIAS {
        Regime::FastAnyP
    } else if alpha == CRITICAL_BIAS {
        Regime::Unclassified
    } else if p >= critical_p(alpha, DEFAULT_ROOT_TOL)? {
        Regime::FastAboveThreshold
    } else {
        Regime::SlowBelowThreshold
    })
}

/// All threshold quantities for one bias value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub alpha: f64,
    pub x_star: f64,
    pub r: f64,
    pub x_low: Option<f64>,
    pub x_high: Option<f64>,
    /// Present only for `α < 1/9`.
    pub p_c: Option<f64>,
}

impl ThresholdReport {
    /// Regime for initial fraction `p`, using the stored `p_c`.
    pub fn classify(&self, p: f64) -> Regime {
        if self.alpha > CRITICAL_BIAS {
            Regime::FastAnyP
        } else if self.alpha == CRITICAL_BIAS {
            Regime::Unclassified
        } else {
            match self.p_c {
                Some(pc) if p >= pc => Regime::FastAboveThreshold,
                _ => Regime::SlowBelowThreshold,
            }
        }
    }

    /// The regime when it does not depend on `p`.
    pub fn p_independent_regime(&self) -> Option<Regime> {
        (self.alpha >= CRITICAL_BIAS).then(|| self.classify(0.0))
    }
}

/// Threshold report for `0 < α < 1`.
pub fn threshold_report(alpha: f64, tol: f64) -> Result<ThresholdReport, AnalysisError> {
    let sp = stationary_points(alpha)?;
    let p_c = if alpha < CRITICAL_BIAS { Some(critical_p(alpha, tol)?) } else { None };
    Ok(ThresholdReport {
        alpha,
        x_star: sp.x_star,
        r: sp.r,
        x_low: sp.x_low(),
        x_high: sp.x_high(),
        p_c,
    })
}
