//! Byte-stable number formatting for result files.

/// Significant digits in every floating-point field.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` to 12 significant digits, without trailing zeros. Plain decimal
/// notation is used for exponents in `-5..12`, scientific otherwise.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

/// Renders `10^log10_value` without leaving the `f64` range, e.g.
/// `3.2e512` for a value too large to hold linearly.
pub fn from_log10(log10_value: f64) -> String {
    if !log10_value.is_finite() {
        return if log10_value == f64::NEG_INFINITY { "0".to_string() } else { log10_value.to_string() };
    }
    if log10_value.abs() < 300.0 {
        return sig12(10f64.powf(log10_value));
    }
    let mut exp = log10_value.floor();
    let mut mantissa = 10f64.powf(log10_value - exp);
    let digits = format!("{:.*}", SIGNIFICANT_DIGITS - 1, mantissa);
    if digits.starts_with("10") {
        exp += 1.0;
        mantissa /= 10.0;
    }
    let digits = format!("{:.*}", SIGNIFICANT_DIGITS - 1, mantissa);
    format!("{}e{}", trim_zeros(digits), exp as i64)
}
