//! Result records shared by the verification suites, the conjecture scans
//! and the command-line front end.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Bumped whenever a serialized field changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// The first place a property failed, with exact witnesses rendered as `p/q` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub location: BTreeMap<String, i64>,
    pub values: BTreeMap<String, String>,
}

impl Counterexample {
    pub fn at<const N: usize>(location: [(&str, i64); N]) -> Self {
        Self {
            location: location.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.values.insert(key.to_string(), value.to_string());
        self
    }
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let loc: Vec<String> = self.location.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "at {}", loc.join(", "))?;
        for (k, v) in &self.values {
            write!(f, "; {k} = {v}")?;
        }
        Ok(())
    }
}

/// Outcome of checking one named property over a range.
///
/// A failing report always carries the first counterexample in traversal order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub range: String,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    /// Number of failing points seen (at most one when the scan stops on failure).
    pub failures: usize,
    pub checked: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_ms: f64,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Accumulates checks for one property; `finish` produces the report.
#[derive(Debug)]
pub struct ReportBuilder {
    property: String,
    range: String,
    started: Instant,
    first_failure: Option<Counterexample>,
    failures: usize,
    checked: usize,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(property: impl Into<String>, range: impl Into<String>) -> Self {
        Self {
            property: property.into(),
            range: range.into(),
            started: Instant::now(),
            first_failure: None,
            failures: 0,
            checked: 0,
            notes: Vec::new(),
        }
    }

    /// Records one check. `witness` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: Counterexample) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(witness);
        }
    }

    pub fn count(&mut self, n: usize) {
        self.checked += n;
    }

    pub fn has_failed(&self) -> bool {
        self.failures > 0
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn finish(self) -> PropertyReport {
        PropertyReport {
            property: self.property,
            range: self.range,
            verdict: if self.failures == 0 { Verdict::Pass } else { Verdict::Fail },
            counterexample: self.first_failure,
            failures: self.failures,
            checked: self.checked,
            notes: self.notes,
            elapsed_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_report_keeps_first_witness() {
        let mut b = ReportBuilder::new("demo", "m <= 3");
        b.check(true, || unreachable!());
        b.check(false, || Counterexample::at([("m", 2)]).with("value", "-1/2"));
        b.check(false, || Counterexample::at([("m", 3)]));
        let r = b.finish();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.failures, 2);
        assert_eq!(r.checked, 3);
        let ce = r.counterexample.unwrap();
        assert_eq!(ce.location["m"], 2);
        assert_eq!(ce.to_string(), "at m=2; value = -1/2");
    }

    #[test]
    fn passing_report_round_trips() {
        let mut b = ReportBuilder::new("demo", "m <= 3");
        b.count(4);
        b.note("boundary");
        let r = b.finish();
        assert!(r.passed());
        let json = serde_json::to_string(&r).unwrap();
        let back: PropertyReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
