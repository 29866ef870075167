//! Floating-point cross-check of the quartic integral
//! `∫_0^∞ dx / (x^4 + 2a x^2 + 1)^{m+1} = π P_m(a) / (2^{m+3/2} (a+1)^{m+1/2})`.
//!
//! The half-line is folded onto `(0, 1]` with `x -> 1/x`, giving two finite
//! panels, each integrated by globally adaptive 7/15-point Gauss-Kronrod.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::coefficients::poly_p;
use crate::error::{Error, Result};
use crate::exact::{from_f64, to_f64};

// Kronrod abscissae on [-1, 1] (positive half); odd indices are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

#[derive(Clone, Copy, Debug)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One application of the 15-point Kronrod rule with the embedded 7-point
/// Gauss rule; the error estimate is their difference.
fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel { lo, hi, value: kronrod * half, error: ((kronrod - gauss) * half).abs() }
}

/// Value, error estimate and evaluation count of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Bisects the panel with the largest error estimate until the summed
/// estimate drops below `tol`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64, max_evaluations: usize) -> Result<Integral> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let first = gauss_kronrod(&f, lo, hi);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::from([first]);
    let mut error = first.error;
    while error > tol {
        if evaluations + 30 > max_evaluations {
            return Err(Error::Convergence { error, evaluations });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = gauss_kronrod(&f, worst.lo, mid);
        let right = gauss_kronrod(&f, mid, worst.hi);
        evaluations += 30;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // resum occasionally so the running error does not drift
        if heap.len() % 64 == 0 {
            error = heap.iter().map(|p| p.error).sum();
        }
    }
    let value = heap.iter().map(|p| p.value).sum();
    error = heap.iter().map(|p| p.error).sum();
    Ok(Integral { value, error, evaluations })
}

fn check_a(a: f64) -> Result<()> {
    if !a.is_finite() || a <= -1.0 {
        return Err(Error::Divergent(format!("the quartic integral needs a > -1, got {a}")));
    }
    Ok(())
}

/// Adaptive quadrature of `∫_0^∞ dx / (x^4 + 2ax^2 + 1)^{m+1}`, with the
/// tail `[1, ∞)` mapped onto `(0, 1]` as `x^{4m+2} / (x^4 + 2ax^2 + 1)^{m+1}`.
pub fn quartic_integral(m: u64, a: f64, tol: f64) -> Result<Integral> {
    check_a(a)?;
    let power = i32::try_from(m + 1).map_err(|_| Error::Domain(format!("m = {m} too large")))?;
    let inner = |x: f64| {
        let x2 = x * x;
        (x2 * x2 + 2.0 * a * x2 + 1.0).powi(-power)
    };
    let outer = |x: f64| {
        let x2 = x * x;
        x.powi(2 * (2 * power - 1)) * (x2 * x2 + 2.0 * a * x2 + 1.0).powi(-power)
    };
    let head = integrate_adaptive(inner, 0.0, 1.0, 0.5 * tol, DEFAULT_MAX_EVALUATIONS)?;
    let tail = integrate_adaptive(outer, 0.0, 1.0, 0.5 * tol, DEFAULT_MAX_EVALUATIONS)?;
    Ok(Integral {
        value: head.value + tail.value,
        error: head.error + tail.error,
        evaluations: head.evaluations + tail.evaluations,
    })
}

pub fn quartic_integral_numeric(m: u64, a: f64, tol: f64) -> Result<f64> {
    quartic_integral(m, a, tol).map(|i| i.value)
}

/// `π P_m(a) / (2^{m+3/2} (a+1)^{m+1/2})`, with `P_m` evaluated exactly at the
/// rational value of `a` and converted to float only at the end.
pub fn closed_form(m: u64, a: f64) -> Result<f64> {
    check_a(a).map_err(|_| Error::Domain(format!("closed form needs a > -1, got {a}")))?;
    let p = to_f64(&poly_p(m).eval(&from_f64(a)?));
    let m = m as f64;
    Ok(std::f64::consts::PI * p / (2f64.powf(m + 1.5) * (a + 1.0).powf(m + 0.5)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub m: u64,
    pub a: f64,
    pub numeric: f64,
    pub closed_form: f64,
    pub relative_error: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

pub fn quadrature_check(m: u64, a: f64, tol: f64) -> Result<QuadratureResult> {
    let integral = quartic_integral(m, a, tol)?;
    let exact = closed_form(m, a)?;
    Ok(QuadratureResult {
        m,
        a,
        numeric: integral.value,
        closed_form: exact,
        relative_error: (integral.value - exact).abs() / exact.abs(),
        error_estimate: integral.error,
        evaluations: integral.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_is_exact_on_polynomials() {
        // 15-point Kronrod integrates degree <= 22 exactly, 7-point Gauss degree <= 13
        for deg in 0..=13 {
            let p = gauss_kronrod(&|x: f64| x.powi(deg), 0.0, 1.0);
            assert!((p.value - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "degree {deg}");
            assert!(p.error < 1e-14, "degree {deg}");
        }
        let p = gauss_kronrod(&|x: f64| x.powi(22), -1.0, 1.0);
        assert!((p.value - 2.0 / 23.0).abs() < 1e-14);
    }

    #[test]
    fn weights_sum_to_two() {
        let k: f64 = WGK[7] + 2.0 * WGK[..7].iter().sum::<f64>();
        let g: f64 = WG[3] + 2.0 * (WG[0] + WG[1] + WG[2]);
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let r = integrate_adaptive(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10, 100_000).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((r.value - exact).abs() < 1e-8);
    }

    #[test]
    fn budget_exhaustion() {
        let r = integrate_adaptive(|x: f64| x.sqrt().recip(), 0.0, 1.0, 1e-15, 200);
        assert!(matches!(r, Err(Error::Convergence { .. })));
        assert!(integrate_adaptive(|x| x, 0.0, 1.0, 0.0, 200).is_err());
    }

    #[test]
    fn spot_values() {
        let v = quartic_integral_numeric(1, 1.0, 1e-12).unwrap();
        assert!((v - 5.0 * PI / 32.0).abs() < 1e-11);
        let v = quartic_integral_numeric(0, 1.0, 1e-12).unwrap();
        assert!((v - PI / 4.0).abs() < 1e-11);
        let r = quadrature_check(3, 0.0, 1e-10).unwrap();
        assert!(r.relative_error < 1e-9);
    }

    #[test]
    fn closed_form_values() {
        assert!((closed_form(1, 1.0).unwrap() - 5.0 * PI / 32.0).abs() < 1e-15);
        assert!((closed_form(0, 0.0).unwrap() - 1.110_720_734_539_591_5).abs() < 1e-14);
        assert!((closed_form(2, 1.0).unwrap() - PI / 64.0 * 63.0 / 8.0).abs() < 1e-15);
        assert!(closed_form(2, -1.0).is_err());
    }

    #[test]
    fn divergent_parameter() {
        assert!(matches!(quartic_integral(1, -1.0, 1e-8), Err(Error::Divergent(_))));
        assert!(matches!(quartic_integral(1, f64::NAN, 1e-8), Err(Error::Divergent(_))));
    }
}
