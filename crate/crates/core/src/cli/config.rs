use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Serre,
    Imot,
    Basi,
    Aba,
    Hspace,
    Rtt,
    Qdet,
    Propcab,
    Flows,
    Intertwine,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Serre,
        Suite::Imot,
        Suite::Basi,
        Suite::Aba,
        Suite::Hspace,
        Suite::Rtt,
        Suite::Qdet,
        Suite::Propcab,
        Suite::Flows,
        Suite::Intertwine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Serre => "serre",
            Suite::Imot => "imot",
            Suite::Basi => "basi",
            Suite::Aba => "aba",
            Suite::Hspace => "hspace",
            Suite::Rtt => "rtt",
            Suite::Qdet => "qdet",
            Suite::Propcab => "propcab",
            Suite::Flows => "flows",
            Suite::Intertwine => "intertwine",
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
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::Config(format!("unknown report format '{s}'"))),
        }
    }
}

/// Budgets and suite selection for a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest integral index used by the integrals suites.
    pub n_max: u32,
    /// Series truncation order `K`.
    pub series_order: i32,
    pub rtt_n: u32,
    /// Largest flow index `n`.
    pub flow_n: u32,
    /// Largest generator index `j`.
    pub flow_j: u32,
    pub suites: BTreeSet<Suite>,
    pub cache_dir: Option<PathBuf>,
    pub report_format: ReportFormat,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 6,
            series_order: 6,
            rtt_n: 2,
            flow_n: 3,
            flow_j: 4,
            suites: Suite::ALL.into_iter().collect(),
            cache_dir: None,
            report_format: ReportFormat::Text,
        }
    }
}

impl SuiteConfig {
    pub fn with_suites<I: IntoIterator<Item = Suite>>(mut self, suites: I) -> Self {
        self.suites = suites.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        let budgets = [
            ("n-max", self.n_max as i64),
            ("order", self.series_order as i64),
            ("rtt-n", self.rtt_n as i64),
            ("flow-n", self.flow_n as i64),
            ("flow-j", self.flow_j as i64),
        ];
        for (name, v) in budgets {
            if v < 1 {
                return Err(Error::Config(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::Config(_))));
    }

    #[test]
    fn empty_and_zero_budgets_rejected() {
        assert!(SuiteConfig::default().with_suites([]).validate().is_err());
        let c = SuiteConfig { flow_j: 0, ..SuiteConfig::default() };
        assert!(c.validate().is_err());
        assert!(SuiteConfig::default().validate().is_ok());
    }
}
