//! Exact rational helpers shared across the crate.
//!
//! All numeric state in this crate is either machine-integer dyadic data or a
//! `BigRational`; nothing is ever rounded to floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// 2^e as an exact rational, for any sign of `e`.
pub fn pow2(e: i64) -> BigRational {
    let one = BigInt::one();
    if e >= 0 {
        BigRational::from_integer(one << e as usize)
    } else {
        BigRational::new(one.clone(), one << (-e) as usize)
    }
}

/// b^e as an exact rational, `e` may be negative.
pub fn powi(b: u32, e: i64) -> BigRational {
    let base = BigInt::from(b);
    if e >= 0 {
        BigRational::from_integer(base.pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), base.pow((-e) as u32))
    }
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "p/q", an integer, or an exact decimal like "0.999" (optionally signed).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let value = if let Some((num, den)) = body.split_once('/') {
        let n: BigInt = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        BigRational::new(n, d)
    } else if let Some((int, frac)) = body.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let int_part: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse()
                .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?
        };
        let frac_num: BigInt = frac
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        BigRational::from_integer(int_part) + BigRational::new(frac_num, den)
    } else {
        let n: BigInt = body
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        BigRational::from_integer(n)
    };
    Ok(if sign < 0 { -value } else { value })
}

/// Renders in lowest terms, "p/q" or a bare integer.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// floor(q * 2^t) as a BigInt.
pub fn floor_times_pow2(q: &BigRational, t: u32) -> BigInt {
    let scaled = q * pow2(t as i64);
    scaled.floor().to_integer()
}

pub fn abs(q: &BigRational) -> BigRational {
    if q.is_negative() {
        -q.clone()
    } else {
        q.clone()
    }
}
