//! Exact-arithmetic helpers shared across the crate.
//!
//! Costs, waits, and LP weights are all `Ratio<i64>` rationals so that solver
//! results and metrics are reproducible to the bit. Floating point only enters
//! at the statistics layer (standard deviations, Monte Carlo draws).

use num_rational::Ratio;

/// Exact rational scalar used for costs and passenger-hour totals.
pub type Rational = Ratio<i64>;

/// Parses a decimal literal (`"4"`, `"0.25"`, `"-1.5"`) into an exact rational.
///
/// The grammar is deliberately small: an optional sign, digits, and an optional
/// fractional part. Exponents are rejected; configuration values are
/// human-scale numbers and anything needing scientific notation is a mistake.
pub fn parse_decimal(text: &str) -> Result<Rational, DecimalError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(DecimalError::Empty);
    }
    let (sign, digits) = match trimmed.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1i64, trimmed.strip_prefix('+').unwrap_or(trimmed)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(DecimalError::Malformed(trimmed.to_string()));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(DecimalError::Malformed(trimmed.to_string()));
    }
    if frac_part.len() > 18 {
        return Err(DecimalError::TooPrecise(trimmed.to_string()));
    }
    let mut numerator: i64 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        numerator = numerator
            .checked_mul(10)
            .and_then(|n| n.checked_add((c as u8 - b'0') as i64))
            .ok_or_else(|| DecimalError::Overflow(trimmed.to_string()))?;
    }
    let denominator = 10i64
        .checked_pow(frac_part.len() as u32)
        .ok_or_else(|| DecimalError::Overflow(trimmed.to_string()))?;
    Ok(Ratio::new(sign * numerator, denominator))
}

/// Renders a rational as a short exact string: a plain decimal when the
/// denominator divides a power of ten (`"4"`, `"0.25"`), otherwise `"p/q"`.
pub fn exact_string(value: Rational) -> String {
    let denom = *value.denom();
    if denom == 1 {
        return value.numer().to_string();
    }
    // Try to express the denominator as 2^a * 5^b, which scales to 10^max(a,b).
    let (mut rest, mut twos, mut fives) = (denom, 0u32, 0u32);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest == 1 && twos.max(fives) <= 18 {
        let places = twos.max(fives);
        let scale = 10i128.pow(places);
        let scaled = *value.numer() as i128 * (scale / denom as i128);
        let sign = if scaled < 0 { "-" } else { "" };
        let abs = scaled.unsigned_abs();
        let int = abs / scale as u128;
        let frac = abs % scale as u128;
        let frac_str = format!("{frac:0width$}", width = places as usize);
        let frac_str = frac_str.trim_end_matches('0');
        if frac_str.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac_str}")
        }
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Nearest double to a rational, for statistics and display. Exact values
/// stay the source of truth; this is a one-way conversion.
pub fn rational_to_f64(value: Rational) -> f64 {
    *value.numer() as f64 / *value.denom() as f64
}

/// Errors from [`parse_decimal`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecimalError {
    #[error("empty numeric literal")]
    Empty,
    #[error("malformed numeric literal `{0}`")]
    Malformed(String),
    #[error("numeric literal `{0}` has too many fractional digits")]
    TooPrecise(String),
    #[error("numeric literal `{0}` does not fit in 64 bits")]
    Overflow(String),
}
