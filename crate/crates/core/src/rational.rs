//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`: always reduced, denominator
//! positive, arbitrary precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"` or `"p"` (optional leading `-`/`+`). Anything else,
/// including decimals and a zero denominator, is rejected.
pub fn parse(token: &str) -> Result<Rational> {
    let err = || Error::ParseRational(token.to_string());
    let t = token.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let numer = parse_int(num, true).ok_or_else(err)?;
    let denom = match den {
        Some(d) => parse_int(d, false).ok_or_else(err)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(numer, denom))
}

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.as_bytes().first()? {
        b'-' | b'+' if allow_sign => &s[1..],
        _ => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `"p/q"` or `"p"` when the denominator is 1.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // BigInt ratios too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format).collect()
}

pub fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse).collect()
}
