//! Exact rational scalars.
//!
//! Every quantity in this crate is an arbitrary-precision rational; no
//! floating point enters any computation (floats appear only when an SVG
//! coordinate is formatted for display, and even there the exact value is
//! kept alongside). `Rat` is canonically reduced, so `==` is exact value
//! equality and `Ord` is the usual total order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number, always in reduced canonical form.
pub type Rat = BigRational;

/// Error raised when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
}

/// Builds a rational from an integer numerator and denominator.
///
/// Panics on a zero denominator; use [`parse_rat`] for untrusted input.
pub fn rat(numer: i64, denom: i64) -> Rat {
    assert!(denom != 0, "zero denominator");
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds a rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses a rational from `"n"` or `"n/d"` form.
///
/// Rejects zero denominators and anything that is not a pair of integers.
pub fn parse_rat(text: &str) -> Result<Rat, RatParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(RatParseError::Empty);
    }
    let malformed = || RatParseError::Malformed(text.to_string());
    match trimmed.split_once('/') {
        None => {
            let n: BigInt = trimmed.parse().map_err(|_| malformed())?;
            Ok(BigRational::from_integer(n))
        }
        Some((ns, ds)) => {
            let n: BigInt = ns.trim().parse().map_err(|_| malformed())?;
            let d: BigInt = ds.trim().parse().map_err(|_| malformed())?;
            if d.is_zero() {
                return Err(RatParseError::ZeroDenominator(text.to_string()));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Canonical string form: `"n"` for integers, `"n/d"` otherwise (d > 0).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Absolute value.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

/// Maximum of two rationals (by value).
pub fn rat_max(a: &Rat, b: &Rat) -> Rat {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Minimum of two rationals (by value).
pub fn rat_min(a: &Rat, b: &Rat) -> Rat {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Decimal rendering with a fixed number of fractional digits, for display
/// surfaces (SVG coordinates). Rounds toward nearest, ties away from zero.
pub fn rat_to_decimal(r: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    // round half away from zero
    let doubled = &scaled * BigRational::from_integer(BigInt::from(2)) + if scaled.is_negative() {
        -BigRational::one()
    } else {
        BigRational::one()
    };
    let rounded = doubled.trunc().numer() / BigInt::from(2);
    let negative = rounded.is_negative();
    let mag = rounded.magnitude().to_string();
    let mag = if mag.len() as u32 <= digits {
        format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
    } else {
        mag
    };
    let split = mag.len() - digits as usize;
    let (int_part, frac_part) = mag.split_at(split);
    format!("{}{}.{}", if negative { "-" } else { "" }, int_part, frac_part)
}

/// Lossy conversion used only for SVG viewport scaling decisions.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}
