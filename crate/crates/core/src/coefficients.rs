//! The coefficients `d_l(m)` of the polynomial `P_m(a)` from the quartic
//! integral, their integer scaling `b_l(m) = 2^{2m} d_l(m)`, and the
//! consecutive difference `d_{l+1}(m) - d_l(m)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, int, pow2, ExactRational};
use crate::polynomial::DensePolynomial;

/// `2^k C(2m-2k, m-k) C(m+k, m)`, the `l`-independent factor of each summand.
fn outer_weight(m: u64, k: u64) -> BigInt {
    let (m, k) = (m as i64, k as i64);
    pow2(k as u64) * binomial(2 * m - 2 * k, m - k) * binomial(m + k, m)
}

fn scale_inverse(m: u64) -> ExactRational {
    ExactRational::new(BigInt::from(1), pow2(2 * m))
}

/// `d_l(m) = 2^{-2m} Σ_{k=l}^{m} 2^k C(2m-2k, m-k) C(m+k, m) C(k, l)`.
pub fn d_coeff(m: u64, l: u64) -> Result<ExactRational> {
    if l > m {
        return Err(Error::Domain(format!("d_l(m) needs l <= m, got l = {l}, m = {m}")));
    }
    let sum: BigInt = (l..=m)
        .map(|k| outer_weight(m, k) * binomial(k as i64, l as i64))
        .sum();
    Ok(int(sum) * scale_inverse(m))
}

/// All coefficients `d_0(m), ..., d_m(m)` together with their integer scalings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub m: u64,
    /// `b_l(m) = 2^{2m} d_l(m)`
    #[serde(with = "scaled_str")]
    scaled: Vec<BigInt>,
}

mod scaled_str {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|b| b.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}

impl CoefficientRow {
    /// Number of entries, `m + 1`.
    pub fn len(&self) -> usize {
        self.scaled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scaled.is_empty()
    }

    pub fn scaled(&self) -> &[BigInt] {
        &self.scaled
    }

    pub fn value(&self, l: usize) -> ExactRational {
        int(self.scaled[l].clone()) * scale_inverse(self.m)
    }

    pub fn values(&self) -> Vec<ExactRational> {
        let inv = scale_inverse(self.m);
        self.scaled.iter().map(|b| int(b.clone()) * &inv).collect()
    }
}

/// Computes the whole row at once. The `l`-independent weights are computed
/// once per `k`, and `C(k, l)` comes from a running Pascal row.
pub fn coefficient_row(m: u64) -> CoefficientRow {
    let n = m as usize;
    let weights: Vec<BigInt> = (0..=m).map(|k| outer_weight(m, k)).collect();
    let mut scaled = vec![BigInt::zero(); n + 1];
    // pascal[l] = C(k, l) for the current k
    let mut pascal: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    pascal[0] = BigInt::from(1);
    for (k, w) in weights.iter().enumerate() {
        if k > 0 {
            for l in (1..=k).rev() {
                let prev = pascal[l - 1].clone();
                pascal[l] += prev;
            }
        }
        for (slot, c) in scaled.iter_mut().zip(&pascal).take(k + 1) {
            *slot += w * c;
        }
    }
    CoefficientRow { m, scaled }
}

/// `P_m(a) = Σ d_l(m) a^l`.
pub fn poly_p(m: u64) -> DensePolynomial {
    DensePolynomial::new(coefficient_row(m).values())
}

fn check_difference_range(m: u64, l: u64) -> Result<()> {
    if l >= m {
        return Err(Error::Domain(format!(
            "difference d_(l+1)(m) - d_l(m) needs l < m, got l = {l}, m = {m}"
        )));
    }
    Ok(())
}

/// `d_{l+1}(m) - d_l(m)` from the definition.
pub fn delta_direct(m: u64, l: u64) -> Result<ExactRational> {
    check_difference_range(m, l)?;
    Ok(d_coeff(m, l + 1)? - d_coeff(m, l)?)
}

/// The single-sum form
/// `2^{-2m} C(m+l, m) Σ_{k=l}^{m} 2^k C(2m-2k, m-k) C(m+k, m+l) (k-2l-1)/(l+1)`.
pub fn delta_closed(m: u64, l: u64) -> Result<ExactRational> {
    check_difference_range(m, l)?;
    let (mi, li) = (m as i64, l as i64);
    let sum: BigInt = (li..=mi)
        .map(|k| {
            pow2(k as u64) * binomial(2 * mi - 2 * k, mi - k) * binomial(mi + k, mi + li) * (k - 2 * li - 1)
        })
        .sum();
    let front = int(binomial(mi + li, mi)) * scale_inverse(m);
    Ok(front * ExactRational::new(sum, BigInt::from(l + 1)))
}

/// Expected sign of the difference: positive below `floor(m/2)`, negative from there on.
pub fn expected_delta_sign(m: u64, l: u64) -> std::cmp::Ordering {
    if l < m / 2 {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Less
    }
}

/// Sign of `d_{l+1}(m) - d_l(m)` read off a precomputed row.
pub fn delta_sign_from_row(row: &CoefficientRow, l: usize) -> std::cmp::Ordering {
    let diff = &row.scaled[l + 1] - &row.scaled[l];
    if diff.is_positive() {
        std::cmp::Ordering::Greater
    } else if diff.is_negative() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Equal
    }
}
