//! Closed-form thresholds, in exact rational arithmetic.

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

/// `(s-3)/(s-1)` for odd `s`, `(3s-10)/(3s-4)` for even `s`.
pub fn eval_f_rt(s: i64) -> Result<Rational> {
    if s < 3 {
        return Err(Error::Precondition(format!("f_RT needs s >= 3, got {s}")));
    }
    Ok(if s % 2 == 1 { ratio(s - 3, s - 1) } else { ratio(3 * s - 10, 3 * s - 4) })
}

/// `1 - 6/(3r-1)` for odd `r ≥ 5`.
pub fn eval_threshold(r: i64) -> Result<Rational> {
    if r < 5 || r % 2 == 0 {
        return Err(Error::Precondition(format!("threshold needs odd r >= 5, got {r}")));
    }
    Ok(ratio(1, 1) - ratio(6, 3 * r - 1))
}

/// Leading term `(3ℓ-10)/(6ℓ-8) · n²` for even `ℓ ≥ 4`.
pub fn eval_rt_edge_bound(ell: i64, n: i64) -> Result<Rational> {
    if ell < 4 || ell % 2 == 1 {
        return Err(Error::Precondition(format!("edge bound needs even ell >= 4, got {ell}")));
    }
    Ok(ratio(3 * ell - 10, 6 * ell - 8) * Rational::from_integer(n * n))
}
