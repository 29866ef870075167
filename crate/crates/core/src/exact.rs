//! Exact arithmetic primitives shared by every other module.
//!
//! Rationals are [`num_rational::BigRational`], which reduces to lowest terms
//! with a positive denominator after every operation. On top of that this
//! module provides the combinatorial building blocks: binomial coefficients,
//! Pochhammer symbols and powers of two, plus the canonical `p/q` string form
//! used in every report.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: BigInt) -> ExactRational {
    ExactRational::from_integer(n)
}

/// Binomial coefficient `C(n, k)` with the combinatorial convention:
/// zero whenever `k < 0` or `k > n`, and zero for negative `n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc = C(n, i) here; the next value is always integral.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient extended to negative upper index through
/// `C(n, k) = (-1)^k (-n)_k / k!`. Used only where a caller explicitly wants
/// the generalized value; `binomial` keeps the out-of-range-is-zero rule.
pub fn binomial_generalized(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 {
        return binomial(n, k);
    }
    // (-1)^k (-n)_k / k! = (-1)^k C(-n + k - 1, k)
    let magnitude = binomial(-n + k - 1, k);
    if k.is_odd() {
        -magnitude
    } else {
        magnitude
    }
}

/// Rising factorial `x (x+1) ... (x+k-1)`; the empty product is 1.
pub fn pochhammer(x: &ExactRational, k: u64) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut factor = x.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += BigInt::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `2^e` as a rational, accepting negative exponents.
pub fn pow2_rat(e: i64) -> ExactRational {
    if e >= 0 {
        int(pow2(e as u64))
    } else {
        ExactRational::new(BigInt::one(), pow2(e.unsigned_abs()))
    }
}

/// Integer power of a rational; negative exponents invert.
pub fn pow_rat(x: &ExactRational, e: i32) -> Result<ExactRational> {
    if e < 0 && x.is_zero() {
        return Err(Error::Domain("zero raised to a negative power".into()));
    }
    Ok(num_traits::pow::Pow::pow(x, e))
}

/// Canonical string form: `p/q`, or `p` when the denominator is one.
pub fn to_canonical(x: &ExactRational) -> String {
    x.to_string()
}

/// Parses `p/q`, `p`, or a finite decimal such as `-0.25` exactly.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(ExactRational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits_ok = |t: &str| t.chars().all(|c| c.is_ascii_digit());
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !digits_ok(whole_digits) || !digits_ok(frac) || (whole_digits.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let whole_val = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole_digits).map_err(|_| bad())?
        };
        let frac_val = if frac.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(frac).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let magnitude = ExactRational::new(whole_val * &scale + frac_val, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    BigInt::from_str(s).map(int).map_err(|_| bad())
}

/// Nearest `f64`; large numerators and denominators are handled by `num-rational`.
pub fn to_f64(x: &ExactRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Result<ExactRational> {
    ExactRational::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite float {x}")))
}

/// Returns the integer value when `x` is an integer.
pub fn as_integer(x: &ExactRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

/// Returns `-x` as a `u64` when `x` is a nonpositive integer that fits.
pub fn nonpositive_integer_magnitude(x: &ExactRational) -> Option<u64> {
    let n = as_integer(x)?;
    if n.is_positive() {
        return None;
    }
    (-n).to_u64()
}

/// Serde adapter writing rationals as canonical strings.
pub mod serde_str {
    use super::{parse_rational, to_canonical, ExactRational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_canonical(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<ExactRational>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&to_canonical(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<ExactRational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| parse_rational(&s).map_err(D::Error::custom))
                .transpose()
        }
    }
}
