//! Exact rational helpers.

use crate::error::{Error, Result};
use num_rational::Ratio;

pub type Rational = Ratio<i64>;

pub fn ratio(num: i64, den: i64) -> Rational {
    Ratio::new(num, den)
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.125` into an exact rational.
pub fn parse_fraction(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Precondition(format!("not a fraction: {text:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if frac_part.len() > 15 {
        return Err(bad());
    }
    let whole: i64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
    let den = 10i64.pow(frac_part.len() as u32);
    let frac: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad())? };
    let num = whole.checked_mul(den).and_then(|w| w.checked_add(frac)).ok_or_else(bad)?;
    let r = Ratio::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn fmt_ratio(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `floor(frac * n)` for a non-negative fraction.
pub fn floor_times(frac: Rational, n: usize) -> usize {
    let v = frac * Ratio::from_integer(n as i64);
    v.floor().to_integer().max(0) as usize
}

/// `ceil(frac * n)` for a non-negative fraction.
pub fn ceil_times(frac: Rational, n: usize) -> usize {
    let v = frac * Ratio::from_integer(n as i64);
    v.ceil().to_integer().max(0) as usize
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
