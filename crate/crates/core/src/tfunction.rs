//! The sums `S_{m,l}` and `T(m) = S_{2m,m-1}`, every representation of
//! `T(m)`, the bounds that prove `T(m) < 1`, the strengthening chain that
//! reduces unimodality to `S_{m,l} < 1`, and the limit diagnostics.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, pow2, pow2_rat, rat, ratio, to_f64, ExactRational};
use crate::hypergeometric::{hyp2f1, hyp2f1_as_polynomial};
use crate::polynomial::DensePolynomial;

/// `(2 - √2)/2`, the limit of `T(m)`.
pub fn limit_value() -> f64 {
    (2.0 - std::f64::consts::SQRT_2) / 2.0
}

/// `1 - ln 2`, the value once conjectured for the limit; reported for context.
pub fn historical_conjecture() -> f64 {
    1.0 - std::f64::consts::LN_2
}

/// `S_{m,l} = Σ_{k=l}^{2l} C(m-l, m-k) C(m+k, 2k) / C(2m, 2k) · (2l+1-k) / 2^{m-k}`.
pub fn s_sum(m: u64, l: u64) -> Result<ExactRational> {
    if l > m {
        return Err(Error::Domain(format!("S_(m,l) needs l <= m, got m = {m}, l = {l}")));
    }
    let (mi, li) = (m as i64, l as i64);
    let mut acc = ExactRational::zero();
    for k in li..=2 * li {
        let numer = binomial(mi - li, mi - k) * binomial(mi + k, 2 * k) * (2 * li + 1 - k);
        if numer.is_zero() {
            continue;
        }
        let denom = binomial(2 * mi, 2 * k);
        acc += ExactRational::new(numer, denom) * pow2_rat(k - mi);
    }
    Ok(acc)
}

fn require_positive(m: u64, what: &str) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain(format!("{what} needs m >= 1")));
    }
    Ok(())
}

/// `T(m) = Σ_{r=2}^{m+1} C(2r, r) C(m+1, r) (r-1) / (2^r C(4m, r))`.
///
/// Since `C(m+1, r) / C(4m, r) = (m+1)_r↓ / (4m)_r↓` (falling factorials), every
/// term has denominator dividing `2^{m+1} (4m)_{m+1}↓`; the sum is accumulated
/// over that common denominator and reduced once.
pub fn t_direct(m: u64) -> Result<ExactRational> {
    require_positive(m, "T(m)")?;
    let n = m as usize + 1;
    let four_m = BigInt::from(4 * m);
    // tail[r] = (4m - r)(4m - r - 1) ... (4m - m), tail[m+1] = 1
    let mut tail = vec![BigInt::one(); n + 1];
    for r in (0..n).rev() {
        tail[r] = &tail[r + 1] * (&four_m - r);
    }
    let mut central = BigInt::one(); // C(2r, r)
    let mut falling = BigInt::one(); // (m+1)(m) ... (m+2-r)
    let mut numerator = BigInt::zero();
    for (r, tail_r) in tail.iter().enumerate().skip(1) {
        central = central * (4 * r - 2) / r;
        falling *= n + 1 - r;
        if r >= 2 {
            numerator += &central * &falling * (r - 1) * pow2((n - r) as u64) * tail_r;
        }
    }
    let denominator = pow2(n as u64) * &tail[0];
    Ok(ExactRational::new(numerator, denominator))
}

/// `T(m) = 1 - 2F1(1/2, -1-m; -4m; 2) + (m+1)/(4m) 2F1(3/2, -m; 1-4m; 2)`.
pub fn t_hypergeometric(m: u64) -> Result<ExactRational> {
    require_positive(m, "T(m)")?;
    let mi = m as i64;
    let two = rat(2);
    let first = hyp2f1(&ratio(1, 2), &rat(-1 - mi), &rat(-4 * mi), &two)?;
    let second = hyp2f1(&ratio(3, 2), &rat(-mi), &rat(1 - 4 * mi), &two)?;
    Ok(rat(1) - first + ratio(mi + 1, 4 * mi) * second)
}

/// `3(m+1)/(16(4m-1))`, the prefactor of the integral representation.
pub fn integral_prefactor(m: u64) -> ExactRational {
    let mi = m as i64;
    ratio(3 * (mi + 1), 16 * (4 * mi - 1))
}

/// `T(m) = 3(m+1)/(16(4m-1)) ∫_0^2 t 2F1(5/2, 1-m; 2-4m; t) dt`, integrating
/// the polynomial integrand exactly.
pub fn t_integral(m: u64) -> Result<ExactRational> {
    require_positive(m, "T(m)")?;
    let mi = m as i64;
    let series = hyp2f1_as_polynomial(&ratio(5, 2), &rat(1 - mi), &rat(2 - 4 * mi))?;
    let integrand = series.shift_up(1);
    Ok(integral_prefactor(m) * integrand.integrate(&rat(0), &rat(2)))
}

/// `W_m(x) = Σ_{r=0}^{m+1} C(2r, r) C(m+1, r) / C(4m, r) x^r` as a polynomial.
pub fn w_polynomial(m: u64) -> Result<DensePolynomial> {
    require_positive(m, "W_m")?;
    let mi = m as i64;
    Ok(DensePolynomial::new(
        (0..=mi + 1)
            .map(|r| ExactRational::new(binomial(2 * r, r) * binomial(mi + 1, r), binomial(4 * mi, r)))
            .collect(),
    ))
}

/// `W_m(x)` from the finite sum.
pub fn w_function(m: u64, x: &ExactRational) -> Result<ExactRational> {
    Ok(w_polynomial(m)?.eval(x))
}

/// `W_m(x)` as `2F1(1/2, -1-m; -4m; 4x)`.
pub fn w_function_hypergeometric(m: u64, x: &ExactRational) -> Result<ExactRational> {
    require_positive(m, "W_m")?;
    let mi = m as i64;
    hyp2f1(&ratio(1, 2), &rat(-1 - mi), &rat(-4 * mi), &(x * BigInt::from(4)))
}

/// `T(m) = [x W_m'(x) - W_m(x) + 1]` at `x = 1/2`.
pub fn t_via_w(m: u64) -> Result<ExactRational> {
    let w = w_polynomial(m)?;
    let half = ratio(1, 2);
    Ok(&half * w.derivative().eval(&half) - w.eval(&half) + BigInt::one())
}

/// `[W_m'(x)/2 - W_m(x)]` at `x = 1/2`, the uncorrected identity. It does not
/// reproduce `T(m)`; reports show it next to the working form.
pub fn t_via_w_uncorrected(m: u64) -> Result<ExactRational> {
    let w = w_polynomial(m)?;
    let half = ratio(1, 2);
    Ok(&half * w.derivative().eval(&half) - w.eval(&half))
}

/// `C(2r, r) C(m+1, r) <= C(4m, r)` for `2 <= r <= m+1`.
pub fn bound_pair_check(m: u64, r: u64) -> Result<bool> {
    if r < 2 || r > m + 1 {
        return Err(Error::Domain(format!("needs 2 <= r <= m+1, got m = {m}, r = {r}")));
    }
    let (mi, ri) = (m as i64, r as i64);
    Ok(binomial(2 * ri, ri) * binomial(mi + 1, ri) <= binomial(4 * mi, ri))
}

/// First `r` in `2..=m+1` with `C(2r, r) C(m+1, r) > C(4m, r)`, updating all
/// three binomials multiplicatively in `r`.
pub fn bound_pair_violation(m: u64) -> Option<u64> {
    let (mut central, mut small, mut large) = (BigInt::one(), BigInt::one(), BigInt::one());
    for r in 1..=m + 1 {
        central = central * (4 * r - 2) / r;
        small = small * (m + 2 - r) / r;
        large = large * (4 * m + 1 - r) / r;
        if r >= 2 && &central * &small > large {
            return Some(r);
        }
    }
    None
}

/// `Σ_{r=2}^{m+1} (r-1)/2^r`, which equals `1 - (m+2)/2^{m+1}`.
pub fn geometric_tail_bound(m: u64) -> Result<ExactRational> {
    require_positive(m, "the geometric tail")?;
    Ok((2..=m as i64 + 1).map(|r| rat(r - 1) * pow2_rat(-r)).sum())
}

/// `1 - (m+2)/2^{m+1}`.
pub fn geometric_tail_closed(m: u64) -> ExactRational {
    rat(1) - rat(m as i64 + 2) * pow2_rat(-(m as i64 + 1))
}

/// Both sides of the four successively stronger inequalities that imply
/// `d_{l+1}(m) > d_l(m)` for `l < floor(m/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub m: u64,
    pub l: u64,
    /// Shared left side `Σ_{k=l}^{2l} 2^k (2l+1-k) C(2m-2k, m-k) C(m+k, m+l)`.
    #[serde(with = "bigint_str")]
    pub left: BigInt,
    /// Right side weighted by `k - 2l - 1`.
    #[serde(with = "bigint_str")]
    pub weighted_right: BigInt,
    /// Right side with the weight replaced by 1.
    #[serde(with = "bigint_str")]
    pub unweighted_right: BigInt,
    /// Last term of the unweighted right side, `2^m C(2m, m+l)`.
    #[serde(with = "bigint_str")]
    pub last_term: BigInt,
    #[serde(with = "crate::exact::serde_str")]
    pub s_value: ExactRational,
    pub weighted: bool,
    pub unweighted: bool,
    pub last_term_only: bool,
    pub normalized: bool,
    /// `weighted_right >= unweighted_right >= last_term`, and `s_value` equals
    /// `left / last_term`, so each stage implies the one before it.
    pub ordered: bool,
}

impl ChainCheck {
    pub fn all_hold(&self) -> bool {
        self.weighted && self.unweighted && self.last_term_only && self.normalized && self.ordered
    }
}

mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

pub fn inequality_chain_check(m: u64, l: u64) -> Result<ChainCheck> {
    if l >= m / 2 {
        return Err(Error::Domain(format!(
            "the positive-difference regime is 0 <= l < floor(m/2), got m = {m}, l = {l}"
        )));
    }
    let (mi, li) = (m as i64, l as i64);
    let summand = |k: i64| pow2(k as u64) * binomial(2 * mi - 2 * k, mi - k) * binomial(mi + k, mi + li);
    let left: BigInt = (li..=2 * li).map(|k| summand(k) * (2 * li + 1 - k)).sum();
    let weighted_right: BigInt = (2 * li + 2..=mi).map(|k| summand(k) * (k - 2 * li - 1)).sum();
    let unweighted_right: BigInt = (2 * li + 2..=mi).map(summand).sum();
    let last_term = pow2(m) * binomial(2 * mi, mi + li);
    let s_value = s_sum(m, l)?;
    let normalized = s_value < ExactRational::one();
    let ordered = weighted_right >= unweighted_right
        && unweighted_right >= last_term
        && s_value == ExactRational::new(left.clone(), last_term.clone());
    Ok(ChainCheck {
        m,
        l,
        weighted: left < weighted_right,
        unweighted: left < unweighted_right,
        last_term_only: left < last_term,
        normalized,
        ordered,
        left,
        weighted_right,
        unweighted_right,
        last_term,
        s_value,
    })
}

/// `(2 - √2)/2 - T(m)` in floating point.
pub fn limit_gap(m: u64) -> Result<f64> {
    Ok(limit_value() - to_f64(&t_direct(m)?))
}

/// `T(m)` by every representation, with the float distance to the limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TValueBundle {
    pub m: u64,
    #[serde(with = "crate::exact::serde_str")]
    pub direct: ExactRational,
    #[serde(with = "crate::exact::serde_str")]
    pub hypergeometric: ExactRational,
    #[serde(with = "crate::exact::serde_str::option")]
    pub integral: Option<ExactRational>,
    #[serde(with = "crate::exact::serde_str")]
    pub via_w: ExactRational,
    /// Float approximation of `direct`.
    pub approx: f64,
    pub limit_gap: f64,
}

impl TValueBundle {
    pub fn compute(m: u64) -> Result<Self> {
        let direct = t_direct(m)?;
        let approx = to_f64(&direct);
        Ok(Self {
            m,
            hypergeometric: t_hypergeometric(m)?,
            integral: Some(t_integral(m)?),
            via_w: t_via_w(m)?,
            approx,
            limit_gap: limit_value() - approx,
            direct,
        })
    }

    /// Every defined representation agrees with the direct sum.
    pub fn consistent(&self) -> bool {
        self.hypergeometric == self.direct
            && self.via_w == self.direct
            && self.integral.as_ref().is_none_or(|v| *v == self.direct)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::factorial;

    // Independent oracle for T(m): factorial binomials, termwise rationals.
    fn choose(n: u64, k: u64) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        factorial(n) / (factorial(k) * factorial(n - k))
    }

    fn oracle_t(m: u64) -> ExactRational {
        (2..=m + 1)
            .map(|r| ExactRational::new(choose(2 * r, r) * choose(m + 1, r) * BigInt::from(r - 1), pow2(r) * choose(4 * m, r)))
            .sum()
    }

    #[test]
    fn frozen_t_values() {
        assert_eq!(t_direct(1).unwrap(), ratio(1, 4));
        assert_eq!(t_direct(2).unwrap(), ratio(1, 4));
        assert_eq!(t_direct(3).unwrap(), ratio(67, 264));
        assert_eq!(oracle_t(3), ratio(67, 264));
        assert!(t_direct(0).is_err());
        for m in 1..=30 {
            assert_eq!(t_direct(m).unwrap(), oracle_t(m));
        }
    }

    #[test]
    fn s_sum_values() {
        assert_eq!(s_sum(4, 1).unwrap(), ratio(1, 4));
        for m in 0..=20 {
            assert_eq!(s_sum(m, 0).unwrap(), pow2_rat(-(m as i64)));
        }
        assert!(s_sum(3, 4).is_err());
        for m in 1..=30 {
            assert_eq!(s_sum(2 * m, m - 1).unwrap(), t_direct(m).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn representations_small() {
        for m in 1..=3 {
            assert_eq!(t_hypergeometric(m).unwrap(), t_direct(m).unwrap());
            assert_eq!(t_integral(m).unwrap(), t_direct(m).unwrap());
            assert_eq!(t_via_w(m).unwrap(), t_direct(m).unwrap());
        }
        assert_eq!(t_hypergeometric(1).unwrap(), ratio(1, 4));
        assert_eq!(t_integral(1).unwrap(), ratio(1, 4));
    }

    #[test]
    fn uncorrected_w_identity_is_off() {
        assert_eq!(t_via_w_uncorrected(1).unwrap(), ratio(-3, 4));
        assert_ne!(t_via_w_uncorrected(5).unwrap(), t_direct(5).unwrap());
    }

    #[test]
    fn w_forms() {
        assert_eq!(w_polynomial(1).unwrap(), DensePolynomial::new(vec![rat(1), rat(1), rat(1)]));
        for m in 1..=30 {
            assert_eq!(w_function(m, &rat(0)).unwrap(), rat(1));
            let half = ratio(1, 2);
            assert_eq!(w_function(m, &half).unwrap(), w_function_hypergeometric(m, &half).unwrap());
        }
    }

    #[test]
    fn bound_pairs() {
        assert!(bound_pair_check(2, 3).unwrap());
        for m in 1..=40u64 {
            let diff = binomial(4 * m as i64, 2) - binomial(4, 2) * binomial(m as i64 + 1, 2);
            assert_eq!(diff, BigInt::from(5 * m * (m - 1)));
            for r in 2..=m + 1 {
                assert!(bound_pair_check(m, r).unwrap());
            }
        }
        assert!(bound_pair_check(3, 1).is_err());
        assert!(bound_pair_check(3, 5).is_err());
    }

    #[test]
    fn geometric_tail() {
        assert_eq!(geometric_tail_bound(1).unwrap(), ratio(1, 4));
        assert_eq!(geometric_tail_bound(3).unwrap(), ratio(11, 16));
        for m in 1..=40 {
            assert_eq!(geometric_tail_bound(m).unwrap(), geometric_tail_closed(m));
        }
        for m in 2..=40 {
            assert!(t_direct(m).unwrap() < geometric_tail_bound(m).unwrap());
        }
    }

    #[test]
    fn chain_examples() {
        let c = inequality_chain_check(2, 0).unwrap();
        assert_eq!(c.left, BigInt::from(6));
        assert_eq!(c.last_term, BigInt::from(24));
        assert!(c.all_hold());
        let c = inequality_chain_check(4, 1).unwrap();
        assert_eq!(c.s_value, ratio(1, 4));
        assert!(c.all_hold());
        assert!(inequality_chain_check(4, 2).is_err());
        assert!(inequality_chain_check(1, 0).is_err());
    }

    #[test]
    fn limit_gap_values() {
        assert!((limit_gap(1).unwrap() - 0.042_893_218_813_452_5).abs() < 1e-12);
        assert!(limit_gap(0).is_err());
    }

    #[test]
    fn bundle_round_trip() {
        let b = TValueBundle::compute(3).unwrap();
        assert!(b.consistent());
        let json = serde_json::to_string(&b).unwrap();
        assert!(json.contains("\"67/264\""));
        let back: TValueBundle = serde_json::from_str(&json).unwrap();
        assert_eq!(back, b);
    }
}
