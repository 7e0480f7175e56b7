//! Exact rational scalars and the integer combinatorics the rest of the crate
//! builds on.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. On the wire a rational is the
//! string `"p/q"`, or `"p"` when `q = 1`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {input:?}: expected \"p\" or \"p/q\" with q != 0")]
pub struct ParseRationalError {
    pub input: String,
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = s.trim();
    let err = || ParseRationalError {
        input: s.to_string(),
    };
    if trimmed.is_empty() {
        return Err(err());
    }
    match trimmed.split_once('/') {
        None => BigInt::from_str(trimmed)
            .map(Rational::from_integer)
            .map_err(|_| err()),
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| err())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| err())?;
            if den.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// `num/den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient by the multiplicative formula; every partial product
/// is itself a binomial coefficient, so each division is exact.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Double factorial `m!!` with the convention `(-1)!! = 1`.
pub fn double_factorial(m: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = m;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Best-effort conversion for numeric comparison against floating-point
/// results. Handles values whose numerator or denominator overflow `f64`.
pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let num = r.numer();
    let den = r.denom();
    let shift = num.bits() as i64 - den.bits() as i64;
    let scale = shift - 60;
    let scaled = if scale > 0 {
        Rational::new(num.clone(), den << (scale as usize))
    } else {
        Rational::new(num << ((-scale) as usize), den.clone())
    };
    let base = scaled.to_integer().to_f64().unwrap_or(f64::NAN);
    base * 2f64.powi(scale as i32)
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Integer power that accepts negative exponents (`base != 0` required then).
pub fn powi(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        pow(base, exp as u32)
    } else {
        pow(&base.recip(), (-exp) as u32)
    }
}

/// Serde adapter: rationals as `"p/q"` strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `Vec<Rational>` as an array of `"p/q"` strings.
pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
