//! Exact rational scalars.
//!
//! Every value that takes part in a pass/fail verdict is an
//! [`ExactScalar`]: an arbitrary-precision rational kept in lowest terms
//! with a positive denominator. Floating point only appears in the
//! `*_approx` renderings produced by [`to_decimal`].

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type ExactScalar = BigRational;

/// Number of significant digits used by [`to_decimal`].
pub const DECIMAL_DIGITS: u32 = 12;

pub fn int(v: i64) -> ExactScalar {
    ExactScalar::from_integer(BigInt::from(v))
}

pub fn ratio(numer: i64, denom: i64) -> ExactScalar {
    ExactScalar::new(BigInt::from(numer), BigInt::from(denom))
}

/// `2^e` for any signed exponent.
pub fn pow2(e: i32) -> ExactScalar {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        ExactScalar::from_integer(p)
    } else {
        ExactScalar::new(BigInt::one(), p)
    }
}

/// Parses `"p/q"` or `"p"` (optional sign, surrounding whitespace allowed).
pub fn parse(s: &str) -> Result<ExactScalar> {
    ExactScalar::from_str(s.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

/// Canonical string form: `"p/q"`, or `"p"` when the denominator is one.
pub fn render(x: &ExactScalar) -> String {
    x.to_string()
}

/// Exact conversion of a finite `f64`.
pub fn from_f64(v: f64) -> Result<ExactScalar> {
    ExactScalar::from_float(v).ok_or_else(|| Error::Domain(format!("non-finite value {v}")))
}

pub fn to_f64(x: &ExactScalar) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn pow10(e: i64) -> ExactScalar {
    let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
    if e >= 0 {
        ExactScalar::from_integer(p)
    } else {
        ExactScalar::new(BigInt::one(), p)
    }
}

fn round_half_even(x: &ExactScalar) -> BigInt {
    let floor = x.floor();
    let frac = x - &floor;
    let half = ratio(1, 2);
    let base = floor.to_integer();
    match frac.cmp(&half) {
        std::cmp::Ordering::Less => base,
        std::cmp::Ordering::Greater => base + 1,
        std::cmp::Ordering::Equal => {
            if base.is_even() {
                base
            } else {
                base + 1
            }
        }
    }
}

/// Decimal rendering with [`DECIMAL_DIGITS`] significant digits, rounded
/// half-to-even from the exact value.
///
/// Positional notation is used for decimal exponents in `[-6, 12)`,
/// scientific (`d.ddde±x`) otherwise. Trailing zeros are trimmed.
pub fn to_decimal(x: &ExactScalar) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.abs();

    let digits_of = |v: &BigInt| v.abs().to_string().len() as i64;
    let mut exp = digits_of(a.numer()) - digits_of(a.denom());
    while pow10(exp) > a {
        exp -= 1;
    }
    while pow10(exp + 1) <= a {
        exp += 1;
    }

    let sig = i64::from(DECIMAL_DIGITS);
    let mut mantissa = round_half_even(&(&a * pow10(sig - 1 - exp)));
    if mantissa == num_traits::pow(BigInt::from(10), sig as usize) {
        mantissa /= 10;
        exp += 1;
    }
    let digits = mantissa.to_string();
    debug_assert_eq!(digits.len() as i64, sig);

    let body = if (-6..12).contains(&exp) {
        if exp >= 0 {
            let split = (exp + 1) as usize;
            trim_fraction(format!("{}.{}", &digits[..split], &digits[split..]))
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            trim_fraction(format!("0.{zeros}{digits}"))
        }
    } else {
        let m = trim_fraction(format!("{}.{}", &digits[..1], &digits[1..]));
        format!("{m}e{exp}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}
