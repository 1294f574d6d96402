//! Batch verification harness: configuration, suite execution and reports.

mod config;
mod suites;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;

pub use config::{ReportFormat, Suite, SuiteConfig};
pub use suites::{build_checks, list_checks, Check, Outcome, SuiteListing};

use crate::error::{Error, Result};
use crate::imot::{density_psi, read_density, write_density};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub pass: bool,
    pub millis: u64,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub summary: Summary,
    pub checks: Vec<Record>,
}

impl Report {
    fn from_records(checks: Vec<Record>) -> Self {
        let passed = checks.iter().filter(|r| r.pass).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        Report { summary, checks }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// The same report with every timing field zeroed.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.millis = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{verdict} {} [{}] {} ms", c.name, params.join(","), c.millis);
            if let Some(d) = &c.detail {
                for line in d.lines() {
                    let _ = writeln!(s, "    {line}");
                }
            }
        }
        let _ = writeln!(
            s,
            "{} checks, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        s
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Text => self.to_text(),
            ReportFormat::Json => self.to_json(),
        }
    }
}

/// Writes `psi_1 .. psi_{n_max}` to `dir`. Existing files that already hold
/// the right density are left alone. Returns the number of files written.
pub fn cache_densities(n_max: u32, dir: &Path) -> Result<usize> {
    let mut written = 0;
    for n in 1..=n_max {
        let d = density_psi(n)?;
        match read_density(dir, n) {
            Ok(old) if old == d => continue,
            Ok(_) | Err(Error::Io(_)) => {}
            Err(e) => return Err(e),
        }
        write_density(dir, &d)?;
        written += 1;
    }
    Ok(written)
}

/// Runs every selected check. Checks execute in parallel; records keep the
/// order of `build_checks`.
pub fn run(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    if let Some(dir) = &config.cache_dir {
        cache_densities(config.n_max, dir)?;
    }
    let checks = build_checks(config);
    let records = checks
        .par_iter()
        .map(|c| {
            let t = Instant::now();
            let o = c.execute();
            Record {
                name: c.full_name(),
                params: c.params.clone(),
                pass: o.pass,
                millis: t.elapsed().as_millis() as u64,
                detail: o.detail,
            }
        })
        .collect();
    Ok(Report::from_records(records))
}

/// Command line of the `verify` binary.
#[derive(Debug, Parser)]
#[command(name = "verify", about = "Exact verification suites for the lattice quantum phase space")]
pub struct Args {
    /// Comma-separated suites (default: all).
    #[arg(long, value_delimiter = ',')]
    pub suites: Option<Vec<Suite>>,
    #[arg(long, default_value_t = 6)]
    pub n_max: u32,
    /// Series truncation order K.
    #[arg(long, default_value_t = 6)]
    pub order: i32,
    #[arg(long, default_value_t = 2)]
    pub rtt_n: u32,
    #[arg(long, default_value_t = 3)]
    pub flow_n: u32,
    #[arg(long, default_value_t = 4)]
    pub flow_j: u32,
    /// text or json.
    #[arg(long, default_value = "text")]
    pub report: ReportFormat,
    /// Directory for the density cache.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Print the available suites and exit.
    #[arg(long)]
    pub list: bool,
}

impl Args {
    pub fn config(&self) -> SuiteConfig {
        SuiteConfig {
            n_max: self.n_max,
            series_order: self.order,
            rtt_n: self.rtt_n,
            flow_n: self.flow_n,
            flow_j: self.flow_j,
            suites: match &self.suites {
                Some(v) => v.iter().copied().collect(),
                None => Suite::ALL.into_iter().collect(),
            },
            cache_dir: self.cache_dir.clone(),
            report_format: self.report,
        }
    }
}

pub fn listing_text() -> String {
    list_checks().iter().map(|l| format!("{:<11} {:<36} {}\n", l.suite.name(), l.parameters, l.statement)).collect()
}

/// Exit status for a finished run: 0 all pass, 1 some check failed.
pub fn exit_code(report: &Report) -> i32 {
    if report.all_passed() {
        0
    } else {
        1
    }
}

/// Exit status for configuration and I/O errors.
pub const EXIT_CONFIG: i32 = 2;

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suites: &[Suite]) -> SuiteConfig {
        SuiteConfig { n_max: 3, series_order: 3, flow_n: 1, flow_j: 1, ..SuiteConfig::default() }
            .with_suites(suites.iter().copied())
    }

    #[test]
    fn serre_suite_passes() {
        let r = run(&small(&[Suite::Serre])).unwrap();
        assert!(r.all_passed());
        assert!(r.checks.iter().any(|c| c.name == "serre/plus_minus" && c.params["n"] == 3));
    }

    #[test]
    fn smallest_intertwine_passes() {
        let r = run(&small(&[Suite::Intertwine])).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn empty_selection_is_config_error() {
        assert!(matches!(run(&small(&[])), Err(Error::Config(_))));
    }

    #[test]
    fn listing_is_complete() {
        let text = listing_text();
        for s in Suite::ALL {
            assert!(text.contains(s.name()));
        }
    }

    #[test]
    fn args_parse() {
        let a = Args::try_parse_from(["verify", "--suites", "serre,rtt", "--report", "json"]).unwrap();
        let c = a.config();
        assert_eq!(c.suites.len(), 2);
        assert_eq!(c.report_format, ReportFormat::Json);
        assert!(Args::try_parse_from(["verify", "--suites", "bogus"]).is_err());
    }

    #[test]
    fn failing_check_carries_counterexample() {
        let r = run(&small(&[Suite::Hspace])).unwrap();
        let uij = r.checks.iter().find(|c| c.name == "hspace/uij").unwrap();
        assert!(!uij.pass);
        assert!(uij.detail.as_deref().is_some_and(|d| d.contains("x0")));
    }
}
