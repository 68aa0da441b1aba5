//! Scenario configuration: flat `key = value` files, flag overrides and
//! per-scenario defaults.
//!
//! Recognised keys: `scenario`, `d`, `m`, `cases`, `probes`, `quadrature`,
//! `panels`, `fd_order`, `step`, `seed`, and `tolerance.<check>`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use jetstress::FdOrder;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown scenario `{0}` (known: {known})", known = ScenarioId::ALL.iter().map(|s| s.name()).collect::<Vec<_>>().join(", "))]
    UnknownScenario(String),

    #[error("no scenario given; pass --scenario or set `scenario = ...`")]
    MissingScenario,

    #[error("scenario {scenario} does not support {what} = {value} (supported: {supported:?})")]
    InvalidDimension {
        scenario: &'static str,
        what: &'static str,
        value: usize,
        supported: &'static [usize],
    },

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("unknown key `{0}`")]
    UnknownKey(String),

    #[error("invalid value `{value}` for `{key}`: {reason}")]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
    },

    #[error("scenario {scenario} has no check named `{name}`")]
    UnknownTolerance { scenario: &'static str, name: String },

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScenarioId {
    Stokes,
    ExteriorJetIdentity,
    DivergenceIdentity,
    WeakStrong,
    NullStress,
    Hyperelastic1dBar,
    EnergyVariation,
    EquilibratedTranslations,
    MaxwellVacuum,
    PformLeibniz,
}

/// Lower or upper bound semantics of a check tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

/// Defaults and admissible shapes of one registry entry.
#[derive(Debug, Clone, Copy)]
pub struct ScenarioSpec {
    pub d: usize,
    pub m: usize,
    pub d_supported: &'static [usize],
    pub m_supported: &'static [usize],
    pub cases: usize,
    pub probes: usize,
    pub panels: usize,
    /// `(name, default tolerance, bound)` for every check the scenario can emit.
    pub checks: &'static [(&'static str, f64, Bound)],
}

use Bound::{AtLeast, AtMost};

impl ScenarioId {
    pub const ALL: [ScenarioId; 10] = [
        ScenarioId::Stokes,
        ScenarioId::ExteriorJetIdentity,
        ScenarioId::DivergenceIdentity,
        ScenarioId::WeakStrong,
        ScenarioId::NullStress,
        ScenarioId::Hyperelastic1dBar,
        ScenarioId::EnergyVariation,
        ScenarioId::EquilibratedTranslations,
        ScenarioId::MaxwellVacuum,
        ScenarioId::PformLeibniz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioId::Stokes => "stokes",
            ScenarioId::ExteriorJetIdentity => "exterior_jet_identity",
            ScenarioId::DivergenceIdentity => "divergence_identity",
            ScenarioId::WeakStrong => "weak_strong",
            ScenarioId::NullStress => "null_stress",
            ScenarioId::Hyperelastic1dBar => "hyperelastic_1d_bar",
            ScenarioId::EnergyVariation => "energy_variation",
            ScenarioId::EquilibratedTranslations => "equilibrated_translations",
            ScenarioId::MaxwellVacuum => "maxwell_vacuum",
            ScenarioId::PformLeibniz => "pform_leibniz",
        }
    }

    pub fn spec(self) -> ScenarioSpec {
        const ONE: &[usize] = &[1];
        const UP_TO_3: &[usize] = &[1, 2, 3];
        const UP_TO_2: &[usize] = &[1, 2];
        let base = ScenarioSpec {
            d: 2,
            m: 1,
            d_supported: UP_TO_3,
            m_supported: ONE,
            cases: 20,
            probes: 17,
            panels: 1,
            checks: &[],
        };
        match self {
            ScenarioId::Stokes => ScenarioSpec {
                checks: &[("stokes_residual", 1e-6, AtMost)],
                ..base
            },
            ScenarioId::ExteriorJetIdentity => ScenarioSpec {
                m: 2,
                d_supported: UP_TO_2,
                m_supported: UP_TO_2,
                checks: &[("exterior_jet_residual", 1e-6, AtMost)],
                ..base
            },
            ScenarioId::DivergenceIdentity => ScenarioSpec {
                m: 2,
                d_supported: UP_TO_2,
                m_supported: UP_TO_2,
                checks: &[("divergence_residual", 1e-6, AtMost)],
                ..base
            },
            ScenarioId::WeakStrong => ScenarioSpec {
                m: 2,
                m_supported: UP_TO_3,
                checks: &[("weak_strong_residual", 1e-6, AtMost)],
                ..base
            },
            ScenarioId::NullStress => ScenarioSpec {
                m_supported: UP_TO_3,
                cases: 10,
                panels: 4,
                checks: &[
                    ("null_stress_power", 1e-8, AtMost),
                    ("null_stress_magnitude", 0.1, AtLeast),
                ],
                ..base
            },
            ScenarioId::Hyperelastic1dBar => ScenarioSpec {
                d: 1,
                d_supported: ONE,
                cases: 100,
                checks: &[
                    ("vertical_derivative_error", 1e-6, AtMost),
                    ("bar_interior_residual", 1e-6, AtMost),
                    ("bar_boundary_residual", 1e-6, AtMost),
                    ("bar_perturbed_interior_residual", 5e-3, AtLeast),
                ],
                ..base
            },
            ScenarioId::EnergyVariation => ScenarioSpec {
                d: 1,
                d_supported: ONE,
                cases: 10,
                checks: &[("energy_variation_residual", 1e-6, AtMost)],
                ..base
            },
            ScenarioId::EquilibratedTranslations => ScenarioSpec {
                m: 2,
                m_supported: UP_TO_3,
                checks: &[
                    ("translation_residual", 1e-8, AtMost),
                    ("rotation_residual", 1e-8, AtMost),
                ],
                ..base
            },
            ScenarioId::MaxwellVacuum => ScenarioSpec {
                d: 4,
                d_supported: &[4],
                cases: 1,
                probes: 9,
                checks: &[
                    ("null_wave_faraday", 1e-6, AtMost),
                    ("null_wave_current", 1e-6, AtMost),
                    ("non_null_faraday", 1e-6, AtMost),
                    ("non_null_current", 0.1, AtLeast),
                ],
                ..base
            },
            ScenarioId::PformLeibniz => ScenarioSpec {
                d: 3,
                d_supported: &[2, 3, 4],
                cases: 10,
                probes: 5,
                panels: 4,
                checks: &[
                    ("graded_leibniz", 1e-6, AtMost),
                    ("d_squared", 1e-6, AtMost),
                    ("wedge_anticommutativity", 1e-12, AtMost),
                    ("torus_virtual_power", 1e-6, AtMost),
                ],
                ..base
            },
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioId {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| ConfigError::UnknownScenario(s.to_owned()))
    }
}

/// A validated scenario description.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: ScenarioId,
    pub d: usize,
    pub m: usize,
    pub cases: usize,
    pub probes: usize,
    pub quadrature: usize,
    pub panels: usize,
    pub fd_order: FdOrder,
    pub step: f64,
    pub seed: u64,
    /// Overrides only; checks without an entry use the scenario default.
    pub tolerances: BTreeMap<String, f64>,
    pub config_file: Option<PathBuf>,
}

/// Splits `key = value` lines, dropping blank lines and `#` comments.
pub fn parse_entries(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Malformed {
            line,
            message: format!("expected `key = value`, found `{content}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty()
            || !key
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
        {
            return Err(ConfigError::Malformed {
                line,
                message: format!("invalid key `{key}`"),
            });
        }
        if value.is_empty() {
            return Err(ConfigError::Malformed {
                line,
                message: format!("missing value for `{key}`"),
            });
        }
        if out.iter().any(|(k, _)| k == key) {
            return Err(ConfigError::Malformed {
                line,
                message: format!("duplicate key `{key}`"),
            });
        }
        out.push((key.to_owned(), value.to_owned()));
    }
    Ok(out)
}

pub fn read_entries(path: &Path) -> Result<Vec<(String, String)>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_entries(&text)
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e: T::Err| ConfigError::InvalidValue {
        key: key.to_owned(),
        value: value.to_owned(),
        reason: e.to_string(),
    })
}

fn invalid(key: &str, value: impl fmt::Display, reason: &str) -> ConfigError {
    ConfigError::InvalidValue {
        key: key.to_owned(),
        value: value.to_string(),
        reason: reason.to_owned(),
    }
}

impl ScenarioConfig {
    /// Builds a config from entries; later entries override earlier ones.
    pub fn from_entries<'a>(
        entries: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, ConfigError> {
        let mut map: BTreeMap<&str, &str> = BTreeMap::new();
        for (k, v) in entries {
            map.insert(k, v);
        }
        let scenario: ScenarioId = map
            .get("scenario")
            .ok_or(ConfigError::MissingScenario)?
            .parse()?;
        let spec = scenario.spec();
        let mut cfg = ScenarioConfig {
            scenario,
            d: spec.d,
            m: spec.m,
            cases: spec.cases,
            probes: spec.probes,
            quadrature: 8,
            panels: spec.panels,
            fd_order: FdOrder::Fourth,
            step: 1e-3,
            seed: 0,
            tolerances: BTreeMap::new(),
            config_file: None,
        };
        for (&key, &value) in &map {
            match key {
                "scenario" => {}
                "d" => cfg.d = parse_value(key, value)?,
                "m" => cfg.m = parse_value(key, value)?,
                "cases" => cfg.cases = parse_value(key, value)?,
                "probes" => cfg.probes = parse_value(key, value)?,
                "quadrature" => cfg.quadrature = parse_value(key, value)?,
                "panels" => cfg.panels = parse_value(key, value)?,
                "seed" => cfg.seed = parse_value(key, value)?,
                "step" => cfg.step = parse_value(key, value)?,
                "fd_order" => {
                    cfg.fd_order = match value {
                        "2" => FdOrder::Second,
                        "4" => FdOrder::Fourth,
                        _ => return Err(invalid(key, value, "expected 2 or 4")),
                    }
                }
                _ => match key.strip_prefix("tolerance.") {
                    Some(name) => {
                        let tol: f64 = parse_value(key, value)?;
                        cfg.tolerances.insert(name.to_owned(), tol);
                    }
                    None => return Err(ConfigError::UnknownKey(key.to_owned())),
                },
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let spec = self.scenario.spec();
        let name = self.scenario.name();
        if !spec.d_supported.contains(&self.d) {
            return Err(ConfigError::InvalidDimension {
                scenario: name,
                what: "d",
                value: self.d,
                supported: spec.d_supported,
            });
        }
        if !spec.m_supported.contains(&self.m) {
            return Err(ConfigError::InvalidDimension {
                scenario: name,
                what: "m",
                value: self.m,
                supported: spec.m_supported,
            });
        }
        for (key, value) in [
            ("cases", self.cases),
            ("probes", self.probes),
            ("quadrature", self.quadrature),
            ("panels", self.panels),
        ] {
            if value == 0 {
                return Err(invalid(key, value, "must be positive"));
            }
        }
        if self.scenario == ScenarioId::NullStress && self.panels < 3 {
            return Err(invalid("panels", self.panels, "interior bumps need at least 3 panels"));
        }
        // every scenario runs on unit boxes
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(invalid("step", self.step, "must be positive and finite"));
        }
        if self.step * self.fd_order.value() as f64 >= 1.0 {
            return Err(invalid("step", self.step, "stencil does not fit the unit interval"));
        }
        for (check, tol) in &self.tolerances {
            if !spec.checks.iter().any(|(n, _, _)| n == check) {
                return Err(ConfigError::UnknownTolerance {
                    scenario: name,
                    name: check.clone(),
                });
            }
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(invalid(&format!("tolerance.{check}"), tol, "must be positive and finite"));
            }
        }
        Ok(())
    }

    pub fn tolerance(&self, check: &str) -> Option<(f64, Bound)> {
        let (_, default, bound) = self
            .scenario
            .spec()
            .checks
            .iter()
            .find(|(n, _, _)| *n == check)?;
        Some((*self.tolerances.get(check).unwrap_or(default), *bound))
    }
}
