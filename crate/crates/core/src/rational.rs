//! Arbitrary-precision rationals and their canonical `p/q` text form.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `q + k` without a gcd: `(n + k d) / d` is already in lowest terms.
pub fn add_int(q: &Rational, k: i64) -> Rational {
    Rational::new_raw(q.numer() + q.denom() * k, q.denom().clone())
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn is_positive_integer(q: &Rational) -> bool {
    is_integer(q) && q.is_positive()
}

pub fn is_nonnegative_integer(q: &Rational) -> bool {
    is_integer(q) && !q.is_negative()
}

/// Canonical form: `p/q` with `q > 0` and `gcd(p, q) = 1`. Integers keep the
/// `/1` suffix.
pub fn format(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Compact form for human-facing tables: integers drop the denominator.
pub fn format_short(q: &Rational) -> String {
    if is_integer(q) {
        q.numer().to_string()
    } else {
        format(q)
    }
}

/// Accepts `p`, `p/q` (optionally signed, surrounding whitespace ignored).
/// Non-reduced input is reduced; a zero denominator is an error.
pub fn parse(input: &str) -> Result<Rational> {
    let err = |reason: &str| Error::ParseRational {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err("empty"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}
