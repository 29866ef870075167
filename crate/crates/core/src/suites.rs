//! Named verification suites. Each suite checks one family of claims over a
//! range of `m` (or `n`) and returns report items; the command-line front end
//! maps suite names to these drivers one to one.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coefficients::{coefficient_row, delta_sign_from_row, expected_delta_sign};
use crate::error::{Error, Result};
use crate::exact::{rat, ratio, to_canonical, ExactRational};
use crate::hypergeometric::{
    companion_ratio_bound_violation, contiguous_consequence_check, envelope_product, pochhammer_ratio_bound_violation,
    ENVELOPE_SQUARED,
};
use crate::quadrature::QuadratureResult;
use crate::recurrence::{certificate, monotonicity_check, CertificateReport};
use crate::report::{Counterexample, PropertyReport, ReportBuilder, Verdict, SCHEMA_VERSION};
use crate::scan::{scan_infinite_logconcavity, ScanConfig};
use crate::sequence::{
    is_logconcave, is_ratio_monotone, is_unimodal, minimum_functional_argmin, minimum_functional_uncorrected,
    minimum_functional_claimed_value, ratio_monotone_violation,
};
use crate::tfunction::{
    bound_pair_violation, geometric_tail_bound, geometric_tail_closed, inequality_chain_check, integral_prefactor,
    limit_value, s_sum, t_direct, t_via_w_uncorrected, TValueBundle,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Unimodal,
    Logconcave,
    Ilogconcave,
    RatioMonotone,
    MinFunctional,
    DeltaSigns,
    InequalityChain,
    SMonotone,
    TBounds,
    TCrosscheck,
    Recurrence,
    MonotoneT,
    Envelope,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Unimodal,
        Suite::Logconcave,
        Suite::Ilogconcave,
        Suite::RatioMonotone,
        Suite::MinFunctional,
        Suite::DeltaSigns,
        Suite::InequalityChain,
        Suite::SMonotone,
        Suite::TBounds,
        Suite::TCrosscheck,
        Suite::Recurrence,
        Suite::MonotoneT,
        Suite::Envelope,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Unimodal => "unimodal",
            Suite::Logconcave => "logconcave",
            Suite::Ilogconcave => "ilogconcave",
            Suite::RatioMonotone => "ratio-monotone",
            Suite::MinFunctional => "min-functional",
            Suite::DeltaSigns => "delta-signs",
            Suite::InequalityChain => "inequality-chain",
            Suite::SMonotone => "s-monotone",
            Suite::TBounds => "t-bounds",
            Suite::TCrosscheck => "t-crosscheck",
            Suite::Recurrence => "recurrence",
            Suite::MonotoneT => "monotone-t",
            Suite::Envelope => "envelope",
        }
    }

    /// Range used when none is given: 100 for suites over whole rows, 500 for
    /// the scalar `T(m)` checks.
    pub fn default_max(self) -> u64 {
        match self {
            Suite::TBounds | Suite::MonotoneT => 500,
            _ => 100,
        }
    }

    /// Smallest meaningful upper limit.
    fn min_max(self) -> u64 {
        match self {
            Suite::RatioMonotone | Suite::MinFunctional | Suite::Envelope => 2,
            Suite::InequalityChain | Suite::SMonotone => 2,
            Suite::MonotoneT => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown property '{s}'")))
    }
}

/// Parameters shared by all suites; `None` means the suite default.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub max_m: Option<u64>,
    /// Upper limit for the recurrence residuals; falls back to `max_m`.
    pub max_n: Option<u64>,
    pub depth: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { max_m: None, max_n: None, depth: 3 }
    }
}

impl SuiteConfig {
    fn limit(&self, suite: Suite) -> Result<u64> {
        let value = match suite {
            Suite::Recurrence => self.max_n.or(self.max_m),
            _ => self.max_m,
        }
        .unwrap_or_else(|| suite.default_max());
        if value < suite.min_max() {
            return Err(Error::Domain(format!(
                "{suite} needs an upper limit of at least {}, got {value}",
                suite.min_max()
            )));
        }
        Ok(value)
    }
}

/// One entry of a run report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportItem {
    Property(PropertyReport),
    TValues(TValueBundle),
    Quadrature(QuadratureResult),
    Certificate(CertificateReport),
}

impl ReportItem {
    /// Quadrature rows pass when the relative error is within `1e-8`.
    pub fn passed(&self) -> bool {
        match self {
            ReportItem::Property(r) => r.passed(),
            ReportItem::TValues(b) => b.consistent(),
            ReportItem::Quadrature(q) => q.relative_error < 1e-8,
            ReportItem::Certificate(c) => c.passed(),
        }
    }
}

/// Everything one command produced, with its echoed configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub config: serde_json::Value,
    pub results: Vec<ReportItem>,
    pub overall: Verdict,
    pub started: String,
    pub finished: String,
}

impl RunReport {
    pub fn new(
        command: impl Into<String>,
        config: serde_json::Value,
        results: Vec<ReportItem>,
        started: String,
        finished: String,
    ) -> Self {
        let overall = if results.iter().all(ReportItem::passed) { Verdict::Pass } else { Verdict::Fail };
        Self { schema_version: SCHEMA_VERSION, command: command.into(), config, results, overall, started, finished }
    }

    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }
}

/// Runs one suite. Range errors come back as [`Error::Domain`].
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<ReportItem>> {
    let max = cfg.limit(suite)?;
    let report = match suite {
        Suite::Unimodal => unimodal(max),
        Suite::Logconcave => logconcave(max),
        Suite::Ilogconcave => {
            let scan = ScanConfig { min_m: 0, max_m: max, depth: cfg.depth, ..ScanConfig::default() };
            let mut r = scan_infinite_logconcavity(&scan);
            r.property = "ilogconcave".into();
            r
        }
        Suite::RatioMonotone => ratio_monotone(max)?,
        Suite::MinFunctional => min_functional(max),
        Suite::DeltaSigns => delta_signs(max),
        Suite::InequalityChain => inequality_chain(max)?,
        Suite::SMonotone => s_monotone(max)?,
        Suite::TBounds => t_bounds(max)?,
        Suite::TCrosscheck => t_crosscheck(max)?,
        Suite::Recurrence => {
            let cert = certificate(max)?;
            let mut b = ReportBuilder::new("recurrence", format!("1 <= n <= {max}"));
            b.count(cert.residuals.len());
            b.check(cert.b_identity, || Counterexample::at([]).with("identity", "b != a + c + d"));
            b.check(cert.d_shift_matches_expected, || {
                Counterexample::at([]).with("d_shift", cert.d_shift_error.clone().unwrap_or_default())
            });
            if let Some(n) = cert.first_nonzero {
                let residual = cert.residuals.last().map(|r| to_canonical(&r.residual)).unwrap_or_default();
                b.fail(Counterexample::at([("n", n as i64)]).with("residual", residual));
            }
            b.check(cert.ac_limit == ratio(27, 16), || Counterexample::at([]).with("ac_limit", &cert.ac_limit));
            return Ok(vec![ReportItem::Property(b.finish()), ReportItem::Certificate(cert)]);
        }
        Suite::MonotoneT => monotone_t(max)?,
        Suite::Envelope => envelope(max)?,
    };
    Ok(vec![ReportItem::Property(report)])
}

/// Evaluates `point` for each `m` in parallel and records failures in `m` order.
fn per_m<F>(builder: &mut ReportBuilder, range: std::ops::RangeInclusive<u64>, point: F) -> Result<()>
where
    F: Fn(u64) -> Result<Vec<Counterexample>> + Sync,
{
    let outcomes: Vec<Result<(u64, Vec<Counterexample>)>> =
        range.collect::<Vec<_>>().into_par_iter().map(|m| point(m).map(|c| (m, c))).collect();
    for outcome in outcomes {
        let (_, failures) = outcome?;
        builder.count(1);
        for ce in failures {
            builder.fail(ce);
        }
    }
    Ok(())
}

fn unimodal(max: u64) -> PropertyReport {
    let mut b = ReportBuilder::new("unimodal", format!("d_0(m), ..., d_m(m) for 0 <= m <= {max}"));
    per_m(&mut b, 0..=max, |m| {
        let row = coefficient_row(m);
        Ok(if is_unimodal(row.scaled()) {
            vec![]
        } else {
            vec![Counterexample::at([("m", m as i64)]).with("row", join(&row.values()))]
        })
    })
    .expect("infallible");
    b.finish()
}

fn logconcave(max: u64) -> PropertyReport {
    let mut b = ReportBuilder::new("logconcave", format!("d_l(m)^2 >= d_(l-1)(m) d_(l+1)(m), 0 <= m <= {max}"));
    per_m(&mut b, 0..=max, |m| {
        let values = coefficient_row(m).values();
        if is_logconcave(&values) {
            return Ok(vec![]);
        }
        let l = values.windows(3).position(|w| &w[1] * &w[1] < &w[0] * &w[2]).unwrap_or(0) + 1;
        Ok(vec![Counterexample::at([("m", m as i64), ("l", l as i64)])
            .with("d_(l-1)", &values[l - 1])
            .with("d_l", &values[l])
            .with("d_(l+1)", &values[l + 1])])
    })
    .expect("infallible");
    b.finish()
}

fn ratio_monotone(max: u64) -> Result<PropertyReport> {
    let mut b = ReportBuilder::new("ratio-monotone", format!("ratio chain x_i/x_(m-1-i), 2 <= m <= {max}"));
    per_m(&mut b, 2..=max, |m| {
        let values = coefficient_row(m).values();
        if is_ratio_monotone(&values)? {
            return Ok(vec![]);
        }
        let i = ratio_monotone_violation(&values).unwrap_or(0);
        Ok(vec![Counterexample::at([("m", m as i64), ("link", i as i64)])])
    })?;
    Ok(b.finish())
}

fn min_functional(max: u64) -> PropertyReport {
    let mut b = ReportBuilder::new(
        "min-functional",
        format!("minimum over 1 <= l <= m at l = m with value 2^(2m) m(m+1) C(2m,m)^2, 2 <= m <= {max}"),
    );
    per_m(&mut b, 2..=max, |m| {
        let claimed = minimum_functional_claimed_value(m);
        let (at, value, unique) = minimum_functional_argmin(m).expect("m >= 1");
        if at == m && value == claimed && unique {
            return Ok(vec![]);
        }
        Ok(vec![Counterexample::at([("m", m as i64), ("argmin", at as i64)])
            .with("minimum", value)
            .with("claimed", claimed)
            .with("unique", unique)])
    })
    .expect("infallible");
    let uncorrected = minimum_functional_uncorrected(2, 2).expect("valid index");
    b.note(format!(
        "uncorrected last term (without b_l) gives {uncorrected} at m = l = 2, against {}",
        minimum_functional_claimed_value(2)
    ));
    b.finish()
}

fn delta_signs(max: u64) -> PropertyReport {
    let mut b = ReportBuilder::new(
        "delta-signs",
        format!("d_(l+1)(m) - d_l(m) > 0 for l < floor(m/2), < 0 after, 1 <= m <= {max}"),
    );
    per_m(&mut b, 1..=max, |m| {
        let row = coefficient_row(m);
        Ok((0..m)
            .filter(|&l| delta_sign_from_row(&row, l as usize) != expected_delta_sign(m, l))
            .map(|l| {
                Counterexample::at([("m", m as i64), ("l", l as i64)])
                    .with("d_l", row.value(l as usize))
                    .with("d_(l+1)", row.value(l as usize + 1))
            })
            .collect())
    })
    .expect("infallible");
    b.finish()
}

fn inequality_chain(max: u64) -> Result<PropertyReport> {
    let mut b = ReportBuilder::new("inequality-chain", format!("all four stages, 0 <= l < floor(m/2), 2 <= m <= {max}"));
    per_m(&mut b, 2..=max, |m| {
        let mut out = Vec::new();
        for l in 0..m / 2 {
            let c = inequality_chain_check(m, l)?;
            if !c.all_hold() {
                out.push(
                    Counterexample::at([("m", m as i64), ("l", l as i64)])
                        .with("weighted", c.weighted)
                        .with("unweighted", c.unweighted)
                        .with("last_term_only", c.last_term_only)
                        .with("normalized", c.normalized)
                        .with("ordered", c.ordered)
                        .with("S", &c.s_value),
                );
            }
        }
        Ok(out)
    })?;
    Ok(b.finish())
}

fn s_monotone(max: u64) -> Result<PropertyReport> {
    let mut b = ReportBuilder::new(
        "s-monotone",
        format!("S(m,l) < S(m,l+1) for l < floor(m/2) - 1 and S(m, floor((m-1)/2)) < 1, 2 <= m <= {max}"),
    );
    per_m(&mut b, 2..=max, |m| {
        let top = (m - 1) / 2;
        let values: Vec<ExactRational> = (0..=top.max(m / 2)).map(|l| s_sum(m, l)).collect::<Result<_>>()?;
        let mut out: Vec<Counterexample> = (0..(m / 2).saturating_sub(1))
            .filter(|&l| values[l as usize] >= values[l as usize + 1])
            .map(|l| {
                Counterexample::at([("m", m as i64), ("l", l as i64)])
                    .with("S(m,l)", &values[l as usize])
                    .with("S(m,l+1)", &values[l as usize + 1])
            })
            .collect();
        if values[top as usize] >= rat(1) {
            out.push(Counterexample::at([("m", m as i64), ("l", top as i64)]).with("S(m,l)", &values[top as usize]));
        }
        Ok(out)
    })?;
    Ok(b.finish())
}

fn t_bounds(max: u64) -> Result<PropertyReport> {
    let mut b = ReportBuilder::new(
        "t-bounds",
        format!("T(m) < 1, and for m >= 2: T(m) < geometric tail, T(m) <= 27/28, prefactor <= 9/112, binomial pair bound; 1 <= m <= {max}"),
    );
    let (one, cap, prefactor_cap) = (rat(1), ratio(27, 28), ratio(9, 112));
    per_m(&mut b, 1..=max, |m| {
        let t = t_direct(m)?;
        let mut out = Vec::new();
        let at = || Counterexample::at([("m", m as i64)]);
        if t >= one {
            out.push(at().with("T(m)", &t));
        }
        let tail = geometric_tail_bound(m)?;
        if tail != geometric_tail_closed(m) {
            out.push(at().with("geometric_tail", &tail));
        }
        if m >= 2 {
            if t >= tail {
                out.push(at().with("T(m)", &t).with("geometric_tail", &tail));
            }
            if t > cap {
                out.push(at().with("T(m)", &t).with("bound", "27/28"));
            }
            let p = integral_prefactor(m);
            if p > prefactor_cap {
                out.push(at().with("prefactor", &p).with("bound", "9/112"));
            }
            if let Some(r) = bound_pair_violation(m) {
                out.push(at().with("pair_bound_fails_at_r", r));
            }
        }
        Ok(out)
    })?;
    Ok(b.finish())
}

fn t_crosscheck(max: u64) -> Result<PropertyReport> {
    let mut b = ReportBuilder::new(
        "t-crosscheck",
        format!("direct = hypergeometric = integral = via W = S(2m, m-1), 1 <= m <= {max}"),
    );
    per_m(&mut b, 1..=max, |m| {
        let bundle = TValueBundle::compute(m)?;
        let s = s_sum(2 * m, m - 1)?;
        let mut out = Vec::new();
        if !bundle.consistent() || s != bundle.direct {
            out.push(
                Counterexample::at([("m", m as i64)])
                    .with("direct", &bundle.direct)
                    .with("hypergeometric", &bundle.hypergeometric)
                    .with("integral", bundle.integral.as_ref().map(to_canonical).unwrap_or_default())
                    .with("via_w", &bundle.via_w)
                    .with("s_sum", &s),
            );
        }
        if !contiguous_consequence_check(m)? {
            out.push(Counterexample::at([("m", m as i64)]).with("contiguous", "relation fails"));
        }
        Ok(out)
    })?;
    b.note(format!("uncorrected W identity at m = 1 gives {}", t_via_w_uncorrected(1)?));
    Ok(b.finish())
}

fn monotone_t(max: u64) -> Result<PropertyReport> {
    let mut base = monotonicity_check(max)?;
    let mut b = ReportBuilder::new(
        "monotone-t",
        format!("{}; limit gap positive and decreasing; distances at 5, 50, {max} ordered", base.range),
    );
    for note in base.notes.drain(..) {
        b.note(note);
    }
    b.count(base.checked);
    if let Some(ce) = base.counterexample.take() {
        for _ in 1..base.failures {
            b.fail(ce.clone());
        }
        b.fail(ce);
    }
    // gaps computed in floating point from the exact values
    let limit = limit_value();
    let gaps: Vec<f64> =
        (2..=max).into_par_iter().map(|m| t_direct(m).map(|t| limit - crate::exact::to_f64(&t))).collect::<Result<_>>()?;
    let gap = |m: u64| gaps[m as usize - 2];
    for m in 2..=max {
        b.check(gap(m) > 0.0, || Counterexample::at([("m", m as i64)]).with("limit_gap", gap(m)));
        if m > 2 {
            b.check(gap(m) < gap(m - 1), || {
                Counterexample::at([("m", m as i64)]).with("gap(m-1)", gap(m - 1)).with("gap(m)", gap(m))
            });
        }
    }
    if max >= 50 {
        let (g5, g50, gmax) = (gap(5).abs(), gap(50).abs(), gap(max).abs());
        b.check(gmax < g50 && g50 < g5, || {
            Counterexample::at([("m", max as i64)]).with("gap(5)", g5).with("gap(50)", g50).with("gap(max)", gmax)
        });
    }
    b.note(format!("limit {limit:.12}, gap at m = {max}: {:.3e}", gap(max)));
    Ok(b.finish())
}

fn envelope(max: u64) -> Result<PropertyReport> {
    let cap = rat(ENVELOPE_SQUARED);
    let grid: Vec<ExactRational> = (0..=20).map(|k| ratio(k, 10)).collect();
    let mut b = ReportBuilder::new(
        "envelope",
        format!(
            "2F1(5/2,1-m;2-4m;t)^2 (3-t)^5 <= 243 on 21 points of [0,2] and scaled ratio bound, 2 <= m <= {max}; \
             (-1-m)_k/(-4m)_k <= 3^-k, 3 <= m <= {max}"
        ),
    );
    b.note("(-1-m)_k/(-4m)_k <= 3^-k fails at m = 2, k = 1 (3/8 > 1/3)");
    per_m(&mut b, 2..=max, |m| {
        let mut out = Vec::new();
        for t in &grid {
            let v = envelope_product(m, t)?;
            if v > cap {
                out.push(Counterexample::at([("m", m as i64)]).with("t", t).with("product", &v));
            }
        }
        if let Some(k) = pochhammer_ratio_bound_violation(m) {
            out.push(Counterexample::at([("m", m as i64), ("k", k as i64)]).with("bound", "scaled ratio"));
        }
        if m < 3 {
            return Ok(out);
        }
        if let Some(k) = companion_ratio_bound_violation(m) {
            out.push(Counterexample::at([("m", m as i64), ("k", k as i64)]).with("bound", "3^-k"));
        }
        Ok(out)
    })?;
    Ok(b.finish())
}

fn join(values: &[ExactRational]) -> String {
    values.iter().map(to_canonical).collect::<Vec<_>>().join(",")
}
