//! Counterexample searches for the two open conjectures: infinite
//! log-concavity of the coefficient rows, and the `2F1` difference inequality
//! for arguments `x >= 1/2`.
//!
//! Points are evaluated in parallel and folded back in `(m, x)` order, so a
//! report never depends on how the work was partitioned.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coefficients::coefficient_row;
use crate::error::{Error, Result};
use crate::exact::{rat, ratio, to_canonical, ExactRational};
use crate::hypergeometric::hyp2f1;
use crate::report::{Counterexample, PropertyReport, ReportBuilder};
use crate::sequence::l_operator_int;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Smallest `m` scanned.
    pub min_m: u64,
    pub max_m: u64,
    /// Number of `L` iterations applied to each row.
    pub depth: u32,
    #[serde(with = "grid_str")]
    pub x_grid: Vec<ExactRational>,
    /// Stop at, and report only, the first counterexample.
    pub stop_on_failure: bool,
}

mod grid_str {
    use super::ExactRational;
    use crate::exact::{parse_rational, to_canonical};
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[ExactRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_canonical).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<ExactRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            min_m: 2,
            max_m: 40,
            depth: 5,
            x_grid: grid(&ratio(1, 2), &rat(5), &ratio(1, 4)).expect("valid default grid"),
            stop_on_failure: false,
        }
    }
}

/// `lo, lo + step, ...` up to and including `hi` when it is hit exactly.
pub fn grid(lo: &ExactRational, hi: &ExactRational, step: &ExactRational) -> Result<Vec<ExactRational>> {
    if *step <= rat(0) {
        return Err(Error::Domain(format!("grid step must be positive, got {step}")));
    }
    if hi < lo {
        return Err(Error::Domain(format!("grid upper end {hi} is below lower end {lo}")));
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    while x <= *hi {
        out.push(x.clone());
        x += step;
    }
    Ok(out)
}

impl ScanConfig {
    pub fn validate_grid(&self) -> Result<()> {
        let half = ratio(1, 2);
        if let Some(x) = self.x_grid.iter().find(|x| **x < half) {
            return Err(Error::Domain(format!("grid point {x} is below 1/2")));
        }
        if self.x_grid.is_empty() {
            return Err(Error::Domain("empty x grid".into()));
        }
        Ok(())
    }

    fn m_range(&self) -> std::ops::RangeInclusive<u64> {
        self.min_m..=self.max_m
    }
}

fn fold_outcomes(builder: &mut ReportBuilder, outcomes: Vec<Option<Counterexample>>, stop_on_failure: bool) {
    for outcome in outcomes {
        builder.count(1);
        if let Some(ce) = outcome {
            builder.fail(ce);
            if stop_on_failure {
                builder.note("stopped at first counterexample");
                return;
            }
        }
    }
}

/// First `(iteration, index)` where `L^j` of row `m` goes negative, for
/// `1 <= j <= depth`. Works on the integer rows `2^{2m} d_l(m)`; the operator
/// is homogeneous so signs are unchanged.
pub fn row_negativity(m: u64, depth: u32) -> Option<(u32, usize, String)> {
    let mut current = coefficient_row(m).scaled().to_vec();
    for j in 1..=depth {
        current = l_operator_int(&current);
        if let Some(idx) = current.iter().position(|v| v.sign() == num_bigint::Sign::Minus) {
            return Some((j, idx, current[idx].to_string()));
        }
    }
    None
}

pub fn scan_infinite_logconcavity(cfg: &ScanConfig) -> PropertyReport {
    let mut builder = ReportBuilder::new(
        "ilogconcave",
        format!("L^j(d(m)) >= 0 for 1 <= j <= {}, {} <= m <= {}", cfg.depth, cfg.min_m, cfg.max_m),
    );
    let outcomes: Vec<Option<Counterexample>> = cfg
        .m_range()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| {
            row_negativity(m, cfg.depth).map(|(j, idx, value)| {
                Counterexample::at([("m", m as i64), ("iteration", j as i64), ("index", idx as i64)])
                    .with("scaled_entry", value)
                    .with("scale", format!("2^{}", 2 * m * (1u64 << j)))
            })
        })
        .collect();
    fold_outcomes(&mut builder, outcomes, cfg.stop_on_failure);
    builder.finish()
}

/// Left side, right side and margin `L - R` of the conjectured inequality at `(m, x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypInequalityPoint {
    pub m: u64,
    #[serde(with = "crate::exact::serde_str")]
    pub x: ExactRational,
    #[serde(with = "crate::exact::serde_str")]
    pub left: ExactRational,
    #[serde(with = "crate::exact::serde_str")]
    pub right: ExactRational,
    #[serde(with = "crate::exact::serde_str")]
    pub margin: ExactRational,
}

impl HypInequalityPoint {
    pub fn holds(&self) -> bool {
        self.left > self.right
    }
}

/// `L = 2F1(3/2,-m-2;-4m-4;4x) - 2F1(3/2,-m-1;-4m;4x)` and
/// `R = 3 [2F1(1/2,-m-2;-4m-4;4x) - 2F1(1/2,-m-1;-4m;4x)]`.
pub fn hyp_inequality_point(m: u64, x: &ExactRational) -> Result<HypInequalityPoint> {
    if m == 0 {
        return Err(Error::Domain("the inequality needs m >= 1".into()));
    }
    let mi = m as i64;
    let z = x * rat(4);
    let (a1, a3) = (ratio(1, 2), ratio(3, 2));
    let (b_next, c_next) = (rat(-mi - 2), rat(-4 * mi - 4));
    let (b_cur, c_cur) = (rat(-mi - 1), rat(-4 * mi));
    let left = hyp2f1(&a3, &b_next, &c_next, &z)? - hyp2f1(&a3, &b_cur, &c_cur, &z)?;
    let right = rat(3) * (hyp2f1(&a1, &b_next, &c_next, &z)? - hyp2f1(&a1, &b_cur, &c_cur, &z)?);
    Ok(HypInequalityPoint { m, x: x.clone(), margin: &left - &right, left, right })
}

pub fn scan_hyp_inequality(cfg: &ScanConfig) -> Result<PropertyReport> {
    cfg.validate_grid()?;
    if cfg.min_m == 0 {
        return Err(Error::Domain("the inequality needs m >= 1".into()));
    }
    let grid_desc = match (cfg.x_grid.first(), cfg.x_grid.last()) {
        (Some(lo), Some(hi)) => format!("{} grid points in [{}, {}]", cfg.x_grid.len(), to_canonical(lo), to_canonical(hi)),
        _ => "empty grid".into(),
    };
    let mut builder = ReportBuilder::new("hypineq", format!("L(m,x) > R(m,x), {} <= m <= {}, {grid_desc}", cfg.min_m, cfg.max_m));
    let points: Vec<(u64, &ExactRational)> = cfg
        .m_range()
        .flat_map(|m| cfg.x_grid.iter().map(move |x| (m, x)))
        .collect();
    let evaluated: Vec<HypInequalityPoint> = points
        .into_par_iter()
        .map(|(m, x)| hyp_inequality_point(m, x))
        .collect::<Result<_>>()?;
    let mut smallest: Option<&HypInequalityPoint> = None;
    let outcomes = evaluated
        .iter()
        .map(|p| {
            if smallest.is_none_or(|s| p.margin < s.margin) {
                smallest = Some(p);
            }
            (!p.holds()).then(|| {
                Counterexample::at([("m", p.m as i64)])
                    .with("x", to_canonical(&p.x))
                    .with("left", to_canonical(&p.left))
                    .with("right", to_canonical(&p.right))
                    .with("margin", to_canonical(&p.margin))
            })
        })
        .collect();
    fold_outcomes(&mut builder, outcomes, cfg.stop_on_failure);
    if let Some(p) = smallest {
        builder.note(format!(
            "smallest margin {:.6e} at m = {}, x = {}",
            crate::exact::to_f64(&p.margin),
            p.m,
            to_canonical(&p.x)
        ));
    }
    Ok(builder.finish())
}
