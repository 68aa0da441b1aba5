//! Scenario reports and their JSON and text renderings.
//!
//! JSON numerals carry 17 significant digits, so every `f64` survives a
//! parse round trip bit for bit. Non-finite values are written as `null`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::{Bound, ScenarioConfig};

mod num17 {
    use serde::de::Error as _;
    use serde::ser::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    fn number(x: f64) -> Result<Option<serde_json::Number>, String> {
        if !x.is_finite() {
            return Ok(None);
        }
        format!("{x:.16e}").parse().map(Some).map_err(|e| format!("{e}"))
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        number(*x).map_err(S::Error::custom)?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<serde_json::Number>::deserialize(d)?
            .map(|n| n.as_f64().ok_or_else(|| D::Error::custom("number out of range")))
            .transpose()?
            .unwrap_or(f64::NAN))
    }

    pub mod map {
        use std::collections::BTreeMap;

        use super::*;

        pub fn serialize<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
            let mut out = BTreeMap::new();
            for (k, v) in m {
                out.insert(k, number(*v).map_err(S::Error::custom)?);
            }
            out.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, f64>, D::Error> {
            let raw = BTreeMap::<String, Option<serde_json::Number>>::deserialize(d)?;
            Ok(raw
                .into_iter()
                .map(|(k, v)| (k, v.and_then(|n| n.as_f64()).unwrap_or(f64::NAN)))
                .collect())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    AtMost,
    AtLeast,
}

impl From<Bound> for BoundKind {
    fn from(b: Bound) -> Self {
        match b {
            Bound::AtMost => BoundKind::AtMost,
            Bound::AtLeast => BoundKind::AtLeast,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(with = "num17")]
    pub measured: f64,
    #[serde(with = "num17")]
    pub tolerance: f64,
    pub bound: BoundKind,
    pub pass: bool,
    #[serde(with = "num17")]
    pub wall_time_s: f64,
}

impl Check {
    /// A NaN measurement never passes.
    pub fn new(name: &str, measured: f64, tolerance: f64, bound: Bound, wall_time_s: f64) -> Self {
        let pass = match bound {
            Bound::AtMost => measured <= tolerance,
            Bound::AtLeast => measured >= tolerance,
        };
        Self {
            name: name.to_owned(),
            measured,
            tolerance,
            bound: bound.into(),
            pass,
            wall_time_s,
        }
    }
}

/// The effective configuration echoed into a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub d: usize,
    pub m: usize,
    pub cases: usize,
    pub probes: usize,
    pub quadrature: usize,
    pub panels: usize,
    pub fd_order: usize,
    #[serde(with = "num17")]
    pub step: f64,
    pub seed: u64,
    #[serde(with = "num17::map")]
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub config_file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub config: ConfigEcho,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(cfg: &ScenarioConfig, checks: Vec<Check>) -> Self {
        let tolerances = cfg
            .scenario
            .spec()
            .checks
            .iter()
            .map(|(name, _, _)| {
                let (tol, _) = cfg.tolerance(name).expect("check listed for the scenario");
                (name.to_string(), tol)
            })
            .collect();
        Self {
            scenario: cfg.scenario.name().to_owned(),
            config: ConfigEcho {
                d: cfg.d,
                m: cfg.m,
                cases: cfg.cases,
                probes: cfg.probes,
                quadrature: cfg.quadrature,
                panels: cfg.panels,
                fd_order: cfg.fd_order.value(),
                step: cfg.step,
                seed: cfg.seed,
                tolerances,
            },
            pass: checks.iter().all(|c| c.pass),
            checks,
            provenance: Provenance {
                tool: env!("CARGO_PKG_NAME").to_owned(),
                version: env!("CARGO_PKG_VERSION").to_owned(),
                seed: cfg.seed,
                config_file: cfg.config_file.as_ref().map(|p| p.display().to_string()),
            },
        }
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Renders a report; JSON output is pretty-printed with a trailing newline.
pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "scenario {} (seed {})", r.scenario, r.config.seed);
            for c in &r.checks {
                let op = match c.bound {
                    BoundKind::AtMost => "<=",
                    BoundKind::AtLeast => ">=",
                };
                let _ = writeln!(
                    s,
                    "{} {:<34} {:>12.3e} {} {:<9.1e} ({:.3} s)",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.measured,
                    op,
                    c.tolerance,
                    c.wall_time_s
                );
            }
            let _ = writeln!(s, "overall: {}", if r.pass { "PASS" } else { "FAIL" });
            s
        }
    }
}
