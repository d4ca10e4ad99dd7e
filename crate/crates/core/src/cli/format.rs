//! Deterministic text rendering for CSV output.

use std::fmt::Write as _;

/// Significant digits in CSV output.
pub const SIG_DIGITS: usize = 9;

pub const SPECTRUM_HEADER: &str =
    "detuning,cold_modulus,cold_phase,hot_modulus,hot_phase,theta_up,theta_down";

/// Formats like C's `%.9g`: nine significant digits, trailing zeros dropped,
/// exponent form outside `1e-4 ≤ |x| < 1e9`. Negative zero prints as `0`.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIG_DIGITS as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { "-" } else { "+" };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Joins values into one CSV line (without the terminator).
pub fn csv_line(values: &[f64]) -> String {
    let mut line = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        let _ = write!(line, "{}", fmt_sig(*v));
    }
    line
}
