//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binomial, int, to_canonical, ExactRational};

/// Coefficient `i` multiplies `x^i`. Trailing zeros are trimmed, so the zero
/// polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DensePolynomial {
    coefficients: Vec<ExactRational>,
}

impl DensePolynomial {
    pub fn new(coefficients: Vec<ExactRational>) -> Self {
        let mut p = Self { coefficients };
        p.trim();
        p
    }

    pub fn from_integers<I: Into<BigInt>, T: IntoIterator<Item = I>>(coefficients: T) -> Self {
        Self::new(coefficients.into_iter().map(|c| int(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    fn trim(&mut self) {
        while self.coefficients.last().is_some_and(Zero::is_zero) {
            self.coefficients.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[ExactRational] {
        &self.coefficients
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coefficient(&self, i: usize) -> ExactRational {
        self.coefficients.get(i).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn leading_coefficient(&self) -> Option<&ExactRational> {
        self.coefficients.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coefficients
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::exact::to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coefficients = Vec::with_capacity(self.coefficients.len() + 1);
        coefficients.push(ExactRational::zero());
        coefficients.extend(
            self.coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| c / BigInt::from(i + 1)),
        );
        Self::new(coefficients)
    }

    /// Exact value of the definite integral over `[lo, hi]`.
    pub fn integrate(&self, lo: &ExactRational, hi: &ExactRational) -> ExactRational {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }

    /// `p(x) * x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coefficients = vec![ExactRational::zero(); k];
        coefficients.extend(self.coefficients.iter().cloned());
        Self::new(coefficients)
    }

    /// The composition `p(x + h)`, expanded by the binomial theorem.
    pub fn translate(&self, h: &ExactRational) -> Self {
        let n = self.coefficients.len();
        let mut out = vec![ExactRational::zero(); n];
        let mut powers = Vec::with_capacity(n);
        let mut acc = ExactRational::one();
        for _ in 0..n {
            powers.push(acc.clone());
            acc *= h;
        }
        for (i, c) in self.coefficients.iter().enumerate() {
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                let weight = int(binomial(i as i64, j as i64)) * &powers[i - j];
                *slot += c * weight;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, factor: &ExactRational) -> Self {
        Self::new(self.coefficients.iter().map(|c| c * factor).collect())
    }
}

impl fmt::Display for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", to_canonical(c))?,
                1 => write!(f, "({})*x", to_canonical(c))?,
                _ => write!(f, "({})*x^{i}", to_canonical(c))?,
            }
        }
        Ok(())
    }
}

impl Add for &DensePolynomial {
    type Output = DensePolynomial;

    fn add(self, rhs: Self) -> DensePolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        DensePolynomial::new((0..n).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl Sub for &DensePolynomial {
    type Output = DensePolynomial;

    fn sub(self, rhs: Self) -> DensePolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        DensePolynomial::new((0..n).map(|i| self.coefficient(i) - rhs.coefficient(i)).collect())
    }
}

impl Mul for &DensePolynomial {
    type Output = DensePolynomial;

    fn mul(self, rhs: Self) -> DensePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return DensePolynomial::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePolynomial::new(out)
    }
}

impl Neg for &DensePolynomial {
    type Output = DensePolynomial;

    fn neg(self) -> DensePolynomial {
        DensePolynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for DensePolynomial {
            type Output = DensePolynomial;
            fn $method(self, rhs: Self) -> DensePolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use proptest::prelude::*;

    fn poly(cs: &[i64]) -> DensePolynomial {
        DensePolynomial::from_integers(cs.iter().copied())
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = poly(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(poly(&[]).degree(), None);
    }

    #[test]
    fn arithmetic() {
        let p = poly(&[1, 1]);
        let q = poly(&[-1, 1]);
        assert_eq!(&p * &q, poly(&[-1, 0, 1]));
        assert_eq!(&p + &q, poly(&[0, 2]));
        assert!((&p - &p).is_zero());
        assert_eq!(-&p, poly(&[-1, -1]));
    }

    #[test]
    fn calculus() {
        let p = poly(&[3, 0, 3]);
        assert_eq!(p.derivative(), poly(&[0, 6]));
        assert_eq!(p.antiderivative(), poly(&[0, 3, 0, 1]));
        // ∫_0^2 (3 + 3t^2) dt = 6 + 8
        assert_eq!(p.integrate(&rat(0), &rat(2)), rat(14));
        assert!(DensePolynomial::constant(rat(5)).derivative().is_zero());
    }

    #[test]
    fn translate_expands_binomially() {
        // (x + 2)^2 = x^2 + 4x + 4
        assert_eq!(poly(&[0, 0, 1]).translate(&rat(2)), poly(&[4, 4, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(DensePolynomial::new(vec![ratio(3, 2), rat(1)]).to_string(), "3/2 + (1)*x");
        assert_eq!(DensePolynomial::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = DensePolynomial> {
        prop::collection::vec(-50i64..50, 0..6).prop_map(|cs| poly(&cs))
    }

    proptest! {
        #[test]
        fn eval_is_ring_homomorphism(p in small_poly(), q in small_poly(), x in -20i64..20, d in 1i64..7) {
            let x = ratio(x, d);
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        }

        #[test]
        fn translate_agrees_with_evaluation(p in small_poly(), x in -20i64..20, h in -5i64..5) {
            let x = rat(x);
            let h = rat(h);
            prop_assert_eq!(p.translate(&h).eval(&x), p.eval(&(&x + &h)));
        }

        #[test]
        fn antiderivative_inverts_derivative(p in small_poly()) {
            prop_assert_eq!(p.antiderivative().derivative(), p);
        }
    }
}
