//! Table, CSV and JSON renderings of run reports.

use std::io::{self, Write};

use unimodal_core::exact::to_canonical;
use unimodal_core::{PropertyReport, ReportItem, RunReport, Verdict};

use crate::args::Format;

pub fn run_report(out: &mut impl Write, report: &RunReport, format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        Format::Table => {
            if matches!(report.results.first(), Some(ReportItem::TValues(_))) {
                writeln!(out, "{:>5}  {:<4}  {:<17}  {:<13}  T(m)", "m", "", "approx", "limit_gap")?;
            }
            for item in &report.results {
                item_table(out, item)?;
            }
            writeln!(out, "overall: {}", verdict(report.overall))
        }
        Format::Csv => items_csv(out, &report.results),
    }
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn property_table(out: &mut impl Write, p: &PropertyReport) -> io::Result<()> {
    writeln!(
        out,
        "{:<17} {}  checked={:<6} failures={:<4} {:>9.1} ms  {}",
        p.property,
        verdict(p.verdict),
        p.checked,
        p.failures,
        p.elapsed_ms,
        p.range
    )?;
    if let Some(ce) = &p.counterexample {
        writeln!(out, "  counterexample {ce}")?;
    }
    for note in &p.notes {
        writeln!(out, "  note: {note}")?;
    }
    Ok(())
}

fn item_table(out: &mut impl Write, item: &ReportItem) -> io::Result<()> {
    match item {
        ReportItem::Property(p) => property_table(out, p),
        ReportItem::Certificate(c) => {
            writeln!(out, "  b = a + c + d: {}", pass(c.b_identity))?;
            writeln!(out, "  d(x+2) = [{}]: {}", c.d_shift.join(", "), pass(c.d_shift_matches_expected))?;
            writeln!(out, "  a/c -> {}", to_canonical(&c.ac_limit))?;
            let zero = c.residuals.iter().filter(|r| r.zero).count();
            writeln!(out, "  zero residuals: {zero} of {}", c.max_n)
        }
        ReportItem::TValues(b) => writeln!(
            out,
            "{:>5}  {}  {:.15}  {:+.6e}  {}",
            b.m,
            pass(item.passed()),
            b.approx,
            b.limit_gap,
            to_canonical(&b.direct)
        ),
        ReportItem::Quadrature(q) => writeln!(
            out,
            "m={} a={} numeric={:.16e} closed_form={:.16e} relative_error={:.3e} estimate={:.3e} evaluations={} {}",
            q.m,
            q.a,
            q.numeric,
            q.closed_form,
            q.relative_error,
            q.error_estimate,
            q.evaluations,
            pass(item.passed())
        ),
    }
}

fn items_csv(out: &mut impl Write, items: &[ReportItem]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut properties_header = false;
    for item in items {
        match item {
            ReportItem::Property(p) => {
                if !properties_header {
                    w.write_record(["property", "verdict", "checked", "failures", "elapsed_ms", "range", "counterexample"])?;
                    properties_header = true;
                }
                w.write_record([
                    p.property.clone(),
                    verdict(p.verdict).to_lowercase(),
                    p.checked.to_string(),
                    p.failures.to_string(),
                    format!("{:.3}", p.elapsed_ms),
                    p.range.clone(),
                    p.counterexample.as_ref().map(ToString::to_string).unwrap_or_default(),
                ])?;
            }
            ReportItem::TValues(b) => w.serialize(b)?,
            ReportItem::Quadrature(q) => w.serialize(q)?,
            // the certificate has nested lists; its property row already carries the verdict
            ReportItem::Certificate(_) => {}
        }
    }
    w.flush()
}

pub fn coefficients(out: &mut impl Write, m: u64, values: &[String], format: Format) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(values)?;
            w.flush()
        }
        Format::Json => {
            serde_json::to_writer(&mut *out, values)?;
            writeln!(out)
        }
        Format::Table => {
            writeln!(out, "{:>4}  d_l({m})", "l")?;
            for (l, v) in values.iter().enumerate() {
                writeln!(out, "{l:>4}  {v}")?;
            }
            Ok(())
        }
    }
}
