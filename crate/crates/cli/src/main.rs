mod args;
mod render;

use std::io::{self, Write};
use std::process::ExitCode;

use chrono::{SecondsFormat, Utc};
use clap::Parser;
use serde_json::json;

use unimodal_core::exact::{parse_rational, to_canonical, to_f64};
use unimodal_core::scan::{grid, ScanConfig};
use unimodal_core::suites::{run_suite, SuiteConfig};
use unimodal_core::{
    coefficient_row, quadrature_check, scan_hyp_inequality, scan_infinite_logconcavity, Error, ReportItem, RunReport,
    Suite, TValueBundle,
};

use args::{Cli, Command, Format, ScanKind, VerifyArgs};

/// Exit status for a usage or configuration error.
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Parse(_) | Error::Unsupported(_) | Error::Divergent(_) => Failure::Usage(e.to_string()),
            Error::Pole { .. } | Error::Convergence { .. } | Error::Certificate(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(INTERNAL);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli.command, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(INTERNAL)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<u8, Failure> {
    match command {
        Command::Coeffs { m, format } => {
            let values: Vec<String> = coefficient_row(m).values().iter().map(to_canonical).collect();
            render::coefficients(out, m, &values, format)?;
            Ok(0)
        }
        Command::Verify(args) => verify(args, out),
        Command::Scan { kind } => scan(kind, out),
        Command::Tvalues { max_m, format } => {
            if max_m == 0 {
                return Err(Failure::Usage("--max-m must be at least 1".into()));
            }
            let started = now();
            let results = (1..=max_m)
                .map(|m| TValueBundle::compute(m).map(ReportItem::TValues))
                .collect::<Result<Vec<_>, _>>()?;
            finish("tvalues", json!({ "max_m": max_m }), results, started, format, out)
        }
        Command::Integral { m, a, tol, format } => {
            let a = to_f64(&parse_rational(&a)?);
            if tol.is_nan() || tol <= 0.0 {
                return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
            }
            let started = now();
            let result = quadrature_check(m, a, tol)?;
            let config = json!({ "m": m, "a": a, "tol": tol });
            finish("integral", config, vec![ReportItem::Quadrature(result)], started, format, out)
        }
    }
}

fn verify(args: VerifyArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let suites: Vec<Suite> = match &args.property {
        Some(name) => vec![name.parse::<Suite>()?],
        None => Suite::ALL.to_vec(),
    };
    let cfg = SuiteConfig { max_m: args.max_m, max_n: args.max_n, depth: args.depth };
    let started = now();
    let mut results = Vec::new();
    for suite in &suites {
        results.extend(run_suite(*suite, &cfg)?);
    }
    let names: Vec<&str> = suites.iter().map(|s| s.name()).collect();
    let config = json!({ "properties": names, "max_m": args.max_m, "max_n": args.max_n, "depth": args.depth });
    finish("verify", config, results, started, args.format, out)
}

fn parse_grid(spec: &str) -> Result<Vec<unimodal_core::ExactRational>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(Failure::Usage(format!("--x-grid expects lo:hi:step, got '{spec}'")));
    };
    Ok(grid(&parse_rational(lo)?, &parse_rational(hi)?, &parse_rational(step)?)?)
}

fn scan(kind: ScanKind, out: &mut impl Write) -> Result<u8, Failure> {
    let started = now();
    match kind {
        ScanKind::Ilogconcave { common, depth } => {
            let cfg = ScanConfig {
                min_m: common.min_m.unwrap_or(0),
                max_m: common.max_m,
                depth,
                stop_on_failure: common.stop_on_failure,
                ..ScanConfig::default()
            };
            check_range(&cfg)?;
            let report = scan_infinite_logconcavity(&cfg);
            let config = serde_json::to_value(&cfg).map_err(|e| Failure::Internal(e.to_string()))?;
            finish("scan ilogconcave", config, vec![ReportItem::Property(report)], started, common.format, out)
        }
        ScanKind::Hypineq { common, x_grid } => {
            let cfg = ScanConfig {
                min_m: common.min_m.unwrap_or(2),
                max_m: common.max_m,
                x_grid: parse_grid(&x_grid)?,
                stop_on_failure: common.stop_on_failure,
                ..ScanConfig::default()
            };
            check_range(&cfg)?;
            let report = scan_hyp_inequality(&cfg)?;
            let config = serde_json::to_value(&cfg).map_err(|e| Failure::Internal(e.to_string()))?;
            finish("scan hypineq", config, vec![ReportItem::Property(report)], started, common.format, out)
        }
    }
}

fn check_range(cfg: &ScanConfig) -> Result<(), Failure> {
    if cfg.max_m == 0 || cfg.min_m > cfg.max_m {
        return Err(Failure::Usage(format!("empty range {} <= m <= {}", cfg.min_m, cfg.max_m)));
    }
    Ok(())
}

fn finish(
    command: &str,
    config: serde_json::Value,
    results: Vec<ReportItem>,
    started: String,
    format: Format,
    out: &mut impl Write,
) -> Result<u8, Failure> {
    let report = RunReport::new(command, config, results, started, now());
    render::run_report(out, &report, format)?;
    Ok(if report.passed() { 0 } else { 1 })
}
