//! The three-term inhomogeneous recurrence
//! `a(n) T(n) - b(n) T(n+1) + c(n) T(n+2) + d(n) = 0`
//! with its reference polynomial coefficients, checked exactly against the
//! direct sum for `T`, together with the facts the monotonicity argument uses.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, rat, ExactRational};
use crate::polynomial::DensePolynomial;
use crate::report::{Counterexample, PropertyReport, ReportBuilder};
use crate::tfunction::t_direct;

const A: [i64; 10] = [
    7195230, 87693273, 448856568, 1263033897, 2147597568, 2279791176, 1502157312, 586779648, 121208832, 9732096,
];
const B: [i64; 10] = [
    9661680, 123557904, 651005760, 1865031680, 3206772480, 3428727552, 2272235520, 894167040, 187269120, 15499264,
];
const C: [i64; 10] = [
    3265920, 41472576, 217055232, 618806528, 1062162432, 1139030016, 762052608, 305528832, 66060288, 5767168,
];
const D: [i64; 8] = [-799470, -5607945, -14906040, -16808745, -2987520, 9906360, 8025600, 1858560];

/// Expected expansion of `d(x + 2)`, constant term first.
pub const D_SHIFTED: [i64; 8] = [
    814627800, 2803521195, 3780146130, 2680435095, 1098008880, 262332600, 34045440, 1858560,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceCoefficients {
    pub a: DensePolynomial,
    pub b: DensePolynomial,
    pub c: DensePolynomial,
    pub d: DensePolynomial,
}

impl RecurrenceCoefficients {
    /// The reference coefficients.
    pub fn reference() -> Self {
        Self {
            a: DensePolynomial::from_integers(A),
            b: DensePolynomial::from_integers(B),
            c: DensePolynomial::from_integers(C),
            d: DensePolynomial::from_integers(D),
        }
    }

    pub fn eval(&self, n: u64) -> [ExactRational; 4] {
        let x = rat(n as i64);
        [self.a.eval(&x), self.b.eval(&x), self.c.eval(&x), self.d.eval(&x)]
    }

    /// `a(n) T0 - b(n) T1 + c(n) T2 + d(n)` for given consecutive values.
    pub fn residual_with(&self, n: u64, t: [&ExactRational; 3]) -> ExactRational {
        let [a, b, c, d] = self.eval(n);
        a * t[0] - b * t[1] + c * t[2] + d
    }
}

impl Default for RecurrenceCoefficients {
    fn default() -> Self {
        Self::reference()
    }
}

/// `a(n) T(n) - b(n) T(n+1) + c(n) T(n+2) + d(n)` using the direct sum for `T`.
pub fn recurrence_residual(n: u64) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::Domain("the recurrence needs n >= 1".into()));
    }
    let t = [t_direct(n)?, t_direct(n + 1)?, t_direct(n + 2)?];
    Ok(RecurrenceCoefficients::reference().residual_with(n, [&t[0], &t[1], &t[2]]))
}

/// `b - (a + c + d)` vanishes identically.
pub fn b_identity_check() -> bool {
    let r = RecurrenceCoefficients::reference();
    (&r.b - &(&(&r.a + &r.c) + &r.d)).is_zero()
}

/// Expands `d(x + 2)` and checks it against the expected list and for
/// strictly positive coefficients. Returns the integer coefficients.
pub fn d_shift_positivity() -> Result<Vec<BigInt>> {
    let shifted = RecurrenceCoefficients::reference().d.translate(&rat(2));
    let coefficients: Vec<BigInt> = shifted.coefficients().iter().map(|c| c.to_integer()).collect();
    let expected: Vec<BigInt> = D_SHIFTED.iter().map(|&c| BigInt::from(c)).collect();
    if coefficients != expected {
        return Err(Error::Certificate(format!(
            "d(x+2) expands to {coefficients:?}, expected {expected:?}"
        )));
    }
    if let Some(i) = coefficients.iter().position(|c| !c.is_positive()) {
        return Err(Error::Certificate(format!("coefficient {i} of d(x+2) is not positive")));
    }
    Ok(coefficients)
}

/// `a(n) / c(n)`.
pub fn ac_ratio(n: u64) -> Result<ExactRational> {
    let r = RecurrenceCoefficients::reference();
    let x = rat(n as i64);
    let c = r.c.eval(&x);
    if c.is_zero() {
        return Err(Error::Pole { c: "c(n)".into(), index: n });
    }
    Ok(r.a.eval(&x) / c)
}

/// Ratio of the leading coefficients of `a` and `c`.
pub fn ac_limit() -> ExactRational {
    let r = RecurrenceCoefficients::reference();
    r.a.leading_coefficient().unwrap() / r.c.leading_coefficient().unwrap()
}

/// `T(m) < T(m+1)` for `2 <= m < max_m`. The equality `T(1) = T(2)` is
/// outside the range and recorded as a note.
pub fn monotonicity_check(max_m: u64) -> Result<PropertyReport> {
    if max_m < 3 {
        return Err(Error::Domain(format!("monotonicity check needs max_m >= 3, got {max_m}")));
    }
    let values: Vec<ExactRational> = (1..=max_m).into_par_iter().map(|m| t_direct(m).unwrap()).collect();
    let t = |m: u64| &values[m as usize - 1];
    let mut report = ReportBuilder::new("monotone-t", format!("T(m) < T(m+1), 2 <= m < {max_m}"));
    if t(1) == t(2) {
        report.note(format!("boundary: T(1) = T(2) = {}", t(1)));
    }
    for m in 2..max_m {
        report.check(t(m) < t(m + 1), || {
            Counterexample::at([("m", m as i64)])
                .with("T(m)", t(m))
                .with("T(m+1)", t(m + 1))
        });
    }
    Ok(report.finish())
}

/// Status of one residual in the certificate report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualStatus {
    pub n: u64,
    pub zero: bool,
    #[serde(with = "crate::exact::serde_str")]
    pub residual: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AcSample {
    pub n: u64,
    #[serde(with = "crate::exact::serde_str")]
    pub ratio: ExactRational,
    pub approx: f64,
}

/// Everything the certificate suite checks, in serializable form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub max_n: u64,
    pub b_identity: bool,
    pub d_shift: Vec<String>,
    pub d_shift_matches_expected: bool,
    pub d_shift_error: Option<String>,
    #[serde(with = "crate::exact::serde_str")]
    pub ac_limit: ExactRational,
    pub ac_samples: Vec<AcSample>,
    /// Residuals up to and including the first nonzero one.
    pub residuals: Vec<ResidualStatus>,
    pub first_nonzero: Option<u64>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.b_identity && self.d_shift_matches_expected && self.first_nonzero.is_none() && self.ac_limit == ratio_27_16()
    }
}

fn ratio_27_16() -> ExactRational {
    crate::exact::ratio(27, 16)
}

/// Runs the whole certificate for `1 <= n <= max_n`; residual checking halts
/// at the first nonzero value.
pub fn certificate(max_n: u64) -> Result<CertificateReport> {
    if max_n == 0 {
        return Err(Error::Domain("certificate needs max_n >= 1".into()));
    }
    let coeffs = RecurrenceCoefficients::reference();
    let values: Vec<ExactRational> = (1..=max_n + 2).into_par_iter().map(|m| t_direct(m).unwrap()).collect();
    let mut residuals = Vec::new();
    let mut first_nonzero = None;
    for n in 1..=max_n {
        let i = n as usize - 1;
        let residual = coeffs.residual_with(n, [&values[i], &values[i + 1], &values[i + 2]]);
        let zero = residual.is_zero();
        residuals.push(ResidualStatus { n, zero, residual });
        if !zero {
            first_nonzero = Some(n);
            break;
        }
    }
    let (d_shift, d_shift_error) = match d_shift_positivity() {
        Ok(cs) => (cs.iter().map(ToString::to_string).collect(), None),
        Err(e) => {
            let raw = coeffs.d.translate(&rat(2));
            (raw.coefficients().iter().map(ToString::to_string).collect(), Some(e.to_string()))
        }
    };
    let ac_samples = [1u64, 2, 5, 10, 100, 1000]
        .into_iter()
        .map(|n| {
            let ratio = ac_ratio(n).unwrap();
            AcSample { n, approx: crate::exact::to_f64(&ratio), ratio }
        })
        .collect();
    Ok(CertificateReport {
        max_n,
        b_identity: b_identity_check(),
        d_shift_matches_expected: d_shift_error.is_none(),
        d_shift,
        d_shift_error,
        ac_limit: ac_limit(),
        ac_samples,
        residuals,
        first_nonzero,
    })
}

/// `a(n)(T(n) - T(n+1)) <= c(n)(T(n+1) - T(n+2))`, the consequence of the
/// recurrence together with `T < 1` and `d >= 0`.
pub fn main_inequality_holds(n: u64, t: [&ExactRational; 3]) -> bool {
    let r = RecurrenceCoefficients::reference();
    let [a, _, c, _] = r.eval(n);
    a * (t[0] - t[1]) <= c * (t[1] - t[2])
}

/// `d(n) >= 0`, from the shifted expansion for `n >= 2`.
pub fn d_nonnegative(n: u64) -> bool {
    !RecurrenceCoefficients::reference().d.eval(&int(BigInt::from(n))).is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn leading_and_constant_terms() {
        let r = RecurrenceCoefficients::reference();
        assert_eq!(r.a.degree(), Some(9));
        assert_eq!(r.b.degree(), Some(9));
        assert_eq!(r.c.degree(), Some(9));
        assert_eq!(r.d.degree(), Some(7));
        assert_eq!(r.a.leading_coefficient(), Some(&rat(9732096)));
        assert_eq!(r.b.leading_coefficient(), Some(&rat(15499264)));
        assert_eq!(r.c.leading_coefficient(), Some(&rat(5767168)));
        assert_eq!(r.d.leading_coefficient(), Some(&rat(1858560)));
        assert_eq!(A[0] + C[0] + D[0], B[0]);
        assert_eq!(A[9] + C[9], B[9]);
    }

    #[test]
    fn identity_and_shift() {
        assert!(b_identity_check());
        let shifted = d_shift_positivity().unwrap();
        assert_eq!(shifted[0], BigInt::from(814627800));
        assert_eq!(shifted[7], BigInt::from(1858560));
        assert_eq!(shifted.len(), 8);
    }

    #[test]
    fn residuals_vanish() {
        assert!(recurrence_residual(1).unwrap().is_zero());
        assert!(recurrence_residual(10).unwrap().is_zero());
        assert!(recurrence_residual(0).is_err());
        let r = RecurrenceCoefficients::reference();
        let nonzero = r.residual_with(1, [&ratio(1, 4), &ratio(1, 4), &ratio(67, 263)]);
        assert!(!nonzero.is_zero());
    }

    #[test]
    fn ratios() {
        assert_eq!(ac_limit(), ratio(27, 16));
        for n in 2..=100 {
            assert!(ac_ratio(n).unwrap() > rat(1));
        }
        let gap = ac_ratio(1000).unwrap() - ratio(27, 16);
        assert!(gap.abs() < ratio(1, 100));
    }

    #[test]
    fn d_sign() {
        assert!(!d_nonnegative(0));
        for n in 2..=50 {
            assert!(d_nonnegative(n));
        }
    }

    #[test]
    fn monotone_small() {
        let r = monotonicity_check(30).unwrap();
        assert!(r.passed());
        assert!(r.notes.iter().any(|n| n.contains("T(1) = T(2)")));
        assert!(monotonicity_check(2).is_err());
    }

    #[test]
    fn certificate_small() {
        let c = certificate(12).unwrap();
        assert!(c.passed());
        assert_eq!(c.residuals.len(), 12);
        let json = serde_json::to_string(&c).unwrap();
        let back: CertificateReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
