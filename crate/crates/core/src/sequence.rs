//! Ordering properties of finite sequences, all decided by exact comparison.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::coefficients::coefficient_row;
use crate::error::{Error, Result};
use crate::exact::{int, ExactRational};

/// True when the sequence rises weakly to some peak and then falls weakly.
pub fn is_unimodal<T: Ord>(s: &[T]) -> bool {
    let mut i = 0;
    while i + 1 < s.len() && s[i] <= s[i + 1] {
        i += 1;
    }
    while i + 1 < s.len() && s[i] >= s[i + 1] {
        i += 1;
    }
    i + 1 >= s.len()
}

/// `s_j^2 >= s_{j-1} s_{j+1}` at every interior index.
pub fn is_logconcave(s: &[ExactRational]) -> bool {
    s.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// `x_k -> x_k^2 - x_{k-1} x_{k+1}` with neighbours outside the range read as zero.
pub fn l_operator(s: &[ExactRational]) -> Vec<ExactRational> {
    l_operator_generic(s)
}

/// The same map on integers; the operator is homogeneous of degree two, so
/// signs agree with the rational version on any positive rescaling.
pub fn l_operator_int(s: &[BigInt]) -> Vec<BigInt> {
    l_operator_generic(s)
}

fn l_operator_generic<T>(s: &[T]) -> Vec<T>
where
    T: Clone + Zero + std::ops::Sub<T, Output = T>,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let n = s.len();
    (0..n)
        .map(|k| {
            let sq = &s[k] * &s[k];
            if k == 0 || k + 1 == n {
                sq
            } else {
                sq - &s[k - 1] * &s[k + 1]
            }
        })
        .collect()
}

/// First iteration `j` in `1..=i` and index where `L^j(s)` has a negative
/// entry. Iteration 0 is `s` itself.
pub fn first_negative_iterate(s: &[ExactRational], i: u32) -> Option<(u32, usize)> {
    let mut current = s.to_vec();
    for j in 0..=i {
        if j > 0 {
            current = l_operator(&current);
        }
        if let Some(idx) = current.iter().position(Signed::is_negative) {
            return Some((j, idx));
        }
    }
    None
}

/// Every iterate `L^j(s)`, `0 <= j <= i`, is entrywise nonnegative.
pub fn is_i_logconcave(s: &[ExactRational], i: u32) -> bool {
    first_negative_iterate(s, i).is_none()
}

/// The chain `x_0/x_{m-1} <= x_1/x_{m-2} <= ... <= x_{h-1}/x_{m-h} <= 1`,
/// `h = floor(m/2)`, for a sequence `x_0..x_m` of positive terms.
pub fn is_ratio_monotone(s: &[ExactRational]) -> Result<bool> {
    if s.len() < 2 {
        return Err(Error::Domain("ratio-monotonicity needs at least two terms".into()));
    }
    if let Some(i) = s.iter().position(|x| !x.is_positive()) {
        return Err(Error::Domain(format!("ratio-monotonicity needs positive terms; entry {i} is {}", s[i])));
    }
    Ok(ratio_monotone_violation(s).is_none())
}

/// Index `i` of the first broken link in the ratio chain, where link `i`
/// compares ratio `i` with ratio `i+1` (the final link compares with 1).
pub fn ratio_monotone_violation(s: &[ExactRational]) -> Option<usize> {
    let m = s.len() - 1;
    let h = m / 2;
    // ratio i is s[i] / s[m-1-i]; compare a/b <= c/d via a d <= c b
    for i in 0..h {
        let (num, den) = (&s[i], &s[m - 1 - i]);
        let ok = if i + 1 < h {
            let (next_num, next_den) = (&s[i + 1], &s[m - 2 - i]);
            num * next_den <= next_num * den
        } else {
            num <= den
        };
        if !ok {
            return Some(i);
        }
    }
    None
}

/// `(m+l)(m+1-l) b_{l-1}^2 + l(l+1) b_l^2 - l(2m+1) b_{l-1} b_l` with
/// `b_l = 2^{2m} d_l(m)`, for `1 <= l <= m`.
pub fn minimum_functional(m: u64, l: u64) -> Result<ExactRational> {
    if l < 1 || l > m {
        return Err(Error::Domain(format!("minimum functional needs 1 <= l <= m, got l = {l}, m = {m}")));
    }
    let row = coefficient_row(m);
    Ok(int(minimum_functional_from_scaled(row.scaled(), m, l)))
}

pub(crate) fn minimum_functional_from_scaled(b: &[BigInt], m: u64, l: u64) -> BigInt {
    let (prev, cur) = (&b[l as usize - 1], &b[l as usize]);
    let (m, l) = (BigInt::from(m), BigInt::from(l));
    (&m + &l) * (&m + 1 - &l) * prev * prev + &l * (&l + 1) * cur * cur - &l * (2 * &m + 1) * prev * cur
}

/// The uncorrected functional, whose last term lacks the factor `b_l(m)`.
/// Kept so reports can show how far it is from the claimed minimum value.
pub fn minimum_functional_uncorrected(m: u64, l: u64) -> Result<ExactRational> {
    if l < 1 || l > m {
        return Err(Error::Domain(format!("minimum functional needs 1 <= l <= m, got l = {l}, m = {m}")));
    }
    let row = coefficient_row(m);
    let b = row.scaled();
    let (prev, cur) = (&b[l as usize - 1], &b[l as usize]);
    let (mb, lb) = (BigInt::from(m), BigInt::from(l));
    Ok(int((&mb + &lb) * (&mb + 1 - &lb) * prev * prev + &lb * (&lb + 1) * cur * cur - &lb * (2 * &mb + 1) * prev))
}

/// Claimed minimum value `2^{2m} m(m+1) C(2m, m)^2`.
pub fn minimum_functional_claimed_value(m: u64) -> BigInt {
    let c = crate::exact::binomial(2 * m as i64, m as i64);
    crate::exact::pow2(2 * m) * BigInt::from(m) * BigInt::from(m + 1) * &c * &c
}

/// Position of the minimum over `1 <= l <= m`, the minimum value, and
/// whether that minimum is attained only once.
pub fn minimum_functional_argmin(m: u64) -> Option<(u64, BigInt, bool)> {
    if m == 0 {
        return None;
    }
    let row = coefficient_row(m);
    let values: Vec<BigInt> = (1..=m)
        .map(|l| minimum_functional_from_scaled(row.scaled(), m, l))
        .collect();
    let min = values.iter().min()?.clone();
    let first = values.iter().position(|v| *v == min)? as u64 + 1;
    let unique = values.iter().filter(|v| **v == min).count() == 1;
    Some((first, min, unique))
}
