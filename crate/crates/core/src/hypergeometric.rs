//! Terminating Gauss series `2F1(a, b; c; z)` with `b` a nonpositive integer,
//! evaluated exactly, plus the identities and bounds built on them.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{nonpositive_integer_magnitude, pochhammer, rat, ratio, ExactRational};
use crate::polynomial::DensePolynomial;

/// Parameters `(a, b; c)` and argument `z` of a terminating `2F1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyp2F1Spec {
    #[serde(with = "crate::exact::serde_str")]
    pub a: ExactRational,
    #[serde(with = "crate::exact::serde_str")]
    pub b: ExactRational,
    #[serde(with = "crate::exact::serde_str")]
    pub c: ExactRational,
    #[serde(with = "crate::exact::serde_str")]
    pub z: ExactRational,
}

impl Hyp2F1Spec {
    pub fn new(a: ExactRational, b: ExactRational, c: ExactRational, z: ExactRational) -> Self {
        Self { a, b, c, z }
    }

    /// Index of the last term, `N = -b`, after checking that no denominator
    /// factor `c + j`, `0 <= j < N`, vanishes.
    pub fn truncation(&self) -> Result<u64> {
        truncation(&self.b, &self.c)
    }
}

fn truncation(b: &ExactRational, c: &ExactRational) -> Result<u64> {
    let n = nonpositive_integer_magnitude(b)
        .ok_or_else(|| Error::Unsupported(format!("b = {b} is not a nonpositive integer")))?;
    // c + j = 0 only for c a nonpositive integer with j = -c
    if let Some(bad) = nonpositive_integer_magnitude(c) {
        if bad < n {
            return Err(Error::Pole { c: c.to_string(), index: bad + 1 });
        }
    }
    Ok(n)
}

/// Coefficients `(a)_k (b)_k / ((c)_k k!)`, `k = 0..=N`, by the running ratio
/// `t_{k+1} = t_k (a+k)(b+k) / ((c+k)(k+1))`.
fn term_coefficients(a: &ExactRational, b: &ExactRational, c: &ExactRational) -> Result<Vec<ExactRational>> {
    let n = truncation(b, c)?;
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut term = ExactRational::one();
    out.push(term.clone());
    for k in 0..n {
        let kr = rat(k as i64);
        term = term * (a + &kr) * (b + &kr) / ((c + &kr) * (kr + BigInt::one()));
        out.push(term.clone());
    }
    Ok(out)
}

/// `Σ_{k=0}^{N} (a)_k (b)_k / ((c)_k k!) z^k`.
pub fn hyp2f1_terminating(spec: &Hyp2F1Spec) -> Result<ExactRational> {
    let coeffs = term_coefficients(&spec.a, &spec.b, &spec.c)?;
    // Horner over the coefficient list keeps the running term and the power of z together.
    Ok(coeffs
        .iter()
        .rev()
        .fold(ExactRational::zero(), |acc, t| acc * &spec.z + t))
}

/// Convenience wrapper taking the parameters directly.
pub fn hyp2f1(a: &ExactRational, b: &ExactRational, c: &ExactRational, z: &ExactRational) -> Result<ExactRational> {
    hyp2f1_terminating(&Hyp2F1Spec::new(a.clone(), b.clone(), c.clone(), z.clone()))
}

/// The series as a polynomial in its argument.
pub fn hyp2f1_as_polynomial(a: &ExactRational, b: &ExactRational, c: &ExactRational) -> Result<DensePolynomial> {
    Ok(DensePolynomial::new(term_coefficients(a, b, c)?))
}

/// `d/dt 2F1(a,b;c;t) = (ab/c) 2F1(a+1,b+1;c+1;t)` as an exact polynomial identity.
pub fn derivative_relation_check(a: &ExactRational, b: &ExactRational, c: &ExactRational) -> Result<bool> {
    let lhs = hyp2f1_as_polynomial(a, b, c)?.derivative();
    if b.is_zero() {
        return Ok(lhs.is_zero());
    }
    if c.is_zero() {
        return Err(Error::Pole { c: c.to_string(), index: 1 });
    }
    let one = ExactRational::one();
    let shifted = hyp2f1_as_polynomial(&(a + &one), &(b + &one), &(c + &one))?;
    let rhs = shifted.scale(&(a * b / c));
    Ok(lhs == rhs)
}

/// `2F1(a+1,b;c;z) = 2F1(a,b;c;z) + (bz/c) 2F1(a+1,b+1;c+1;z)`, checked exactly.
pub fn contiguous_relation_check(
    a: &ExactRational,
    b: &ExactRational,
    c: &ExactRational,
    z: &ExactRational,
) -> Result<bool> {
    let one = ExactRational::one();
    let lhs = hyp2f1(&(a + &one), b, c, z)?;
    let base = hyp2f1(a, b, c, z)?;
    if b.is_zero() {
        return Ok(lhs == base);
    }
    if c.is_zero() {
        return Err(Error::Pole { c: c.to_string(), index: 1 });
    }
    let shifted = hyp2f1(&(a + &one), &(b + &one), &(c + &one), z)?;
    Ok(lhs == base + b * z / c * shifted)
}

/// `1F0(a;;z) = (1-z)^{-a}` in floating point, for `|z| < 1`.
pub fn one_f_zero(a: &ExactRational, z: f64) -> Result<f64> {
    if z.is_nan() || z.abs() >= 1.0 {
        return Err(Error::Domain(format!("1F0 needs |z| < 1, got {z}")));
    }
    Ok((1.0 - z).powf(-crate::exact::to_f64(a)))
}

/// `3^k (1-m)_k / (2-4m)_k`, the normalized Pochhammer ratio behind the envelope bound.
pub fn pochhammer_ratio_scaled(m: u64, k: u64) -> ExactRational {
    let m = m as i64;
    let num = pochhammer(&rat(1 - m), k);
    let den = pochhammer(&rat(2 - 4 * m), k);
    num / den * ExactRational::from_integer(num_traits::pow(BigInt::from(3), k as usize))
}

/// Checks that `3^k (1-m)_k/(2-4m)_k` lies in `(0, 1]` and does not increase
/// for `1 <= k <= m-1`. Returns the first offending `k`, if any.
pub fn pochhammer_ratio_bound_violation(m: u64) -> Option<u64> {
    let mut prev = ExactRational::one();
    for k in 1..m {
        let cur = pochhammer_ratio_scaled(m, k);
        if !cur.is_positive() || cur > ExactRational::one() || cur > prev {
            return Some(k);
        }
        prev = cur;
    }
    None
}

/// First `k` in `0..=m+1` with `(-1-m)_k / (-4m)_k > 3^{-k}`.
pub fn companion_ratio_bound_violation(m: u64) -> Option<u64> {
    let mi = m as i64;
    let three = BigInt::from(3);
    (0..=m + 1).find(|&k| {
        let lhs = pochhammer(&rat(-1 - mi), k) / pochhammer(&rat(-4 * mi), k);
        let rhs = ExactRational::new(BigInt::one(), num_traits::pow(three.clone(), k as usize));
        lhs > rhs
    })
}

/// `[2F1(5/2, 1-m; 2-4m; t)]^2 (3-t)^5`, which the envelope bound caps at 243.
pub fn envelope_product(m: u64, t: &ExactRational) -> Result<ExactRational> {
    let mi = m as i64;
    let f = hyp2f1(&ratio(5, 2), &rat(1 - mi), &rat(2 - 4 * mi), t)?;
    let gap = rat(3) - t;
    Ok(&f * &f * num_traits::pow(gap, 5))
}

pub const ENVELOPE_SQUARED: i64 = 243;

/// `(m+1)/(4m) 2F1(3/2,-m;1-4m;2) = [2F1(3/2,-1-m;-4m;2) - 2F1(1/2,-1-m;-4m;2)] / 2`.
pub fn contiguous_consequence_check(m: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::Domain("needs m >= 1".into()));
    }
    let mi = m as i64;
    let two = rat(2);
    let lhs = ratio(mi + 1, 4 * mi) * hyp2f1(&ratio(3, 2), &rat(-mi), &rat(1 - 4 * mi), &two)?;
    let rhs = (hyp2f1(&ratio(3, 2), &rat(-1 - mi), &rat(-4 * mi), &two)?
        - hyp2f1(&ratio(1, 2), &rat(-1 - mi), &rat(-4 * mi), &two)?)
        / BigInt::from(2);
    Ok(lhs == rhs)
}
