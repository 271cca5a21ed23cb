//! Exact rational arithmetic carrier.
//!
//! All closed-form and combinatorial values in this crate are exact
//! rationals over arbitrary-precision integers; floating point appears
//! only inside the LP solver. `num_rational::BigRational` already keeps
//! the invariants we need (positive denominator, reduced form), so it is
//! re-exported under a crate-local name together with a few helpers.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parse `"a/b"`, `"a"` or a plain decimal such as `"0.25"` (converted
/// exactly, `0.25 = 25/100`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("cannot parse rational from {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = frac_part.len() as u32;
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        let negative = int_part.starts_with('-');
        let i: BigInt = int_part.parse().map_err(|_| bad())?;
        let f: BigInt = frac_part.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(digits);
        let mag = i.abs() * &scale + f;
        let num = if negative { -mag } else { mag };
        return Ok(Rational::new(num, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Fixed-point decimal rendering with `digits` places, for display only.
/// Rounds half away from zero.
pub fn decimal_string(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let num = r.numer() * &scale;
    let den = r.denom();
    let half = den / 2;
    let scaled: BigInt = if num.is_negative() {
        (num - half) / den
    } else {
        (num + half) / den
    };
    let sign = if scaled.is_negative() { "-" } else { "" };
    let mag = scaled.abs();
    let int_part = &mag / &scale;
    let frac_part = &mag % &scale;
    format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/4").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&ratio(1, 4), 12), "0.250000000000");
        assert_eq!(decimal_string(&ratio(2, 27), 6), "0.074074");
        assert_eq!(decimal_string(&ratio(-1, 3), 4), "-0.3333");
        assert_eq!(decimal_string(&rat_int(2), 2), "2.00");
    }
}
