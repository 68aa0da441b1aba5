//! Scenario registry, configuration and reporting for the `jetstress`
//! command-line runner.

pub mod config;
pub mod family;
pub mod report;
mod scenarios;

pub use config::{parse_entries, read_entries, Bound, ConfigError, ScenarioConfig, ScenarioId};
pub use report::{emit_report, BoundKind, Check, ConfigEcho, Format, Provenance, Report};
pub use scenarios::{run_scenario, RunError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
