use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use jetstress_cli::{
    emit_report, read_entries, run_scenario, ConfigError, Format, ScenarioConfig, EXIT_CHECK_FAILURE,
    EXIT_CONFIG, EXIT_INTERNAL, EXIT_PASS,
};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

/// Run a jet-bundle stress verification scenario and report its checks.
///
/// Exit status: 0 all checks pass, 1 a check failed, 2 configuration
/// error, 3 internal error.
#[derive(Debug, Parser)]
#[command(name = "jetstress", version)]
struct Cli {
    /// Scenario id, e.g. `stokes` or `maxwell_vacuum`.
    #[arg(long)]
    scenario: Option<String>,

    /// Config file of `key = value` lines; flags override its entries.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Seed for the random field coefficients.
    #[arg(long)]
    seed: Option<u64>,

    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Override a check tolerance, `name=value`; repeatable.
    #[arg(long, value_name = "NAME=VALUE")]
    tolerance: Vec<String>,
}

fn load(cli: &Cli) -> Result<ScenarioConfig, ConfigError> {
    let mut entries = match &cli.config {
        Some(path) => read_entries(path)?,
        None => Vec::new(),
    };
    if let Some(s) = &cli.scenario {
        entries.push(("scenario".into(), s.clone()));
    }
    if let Some(seed) = cli.seed {
        entries.push(("seed".into(), seed.to_string()));
    }
    for t in &cli.tolerance {
        let (name, value) = t.split_once('=').ok_or_else(|| ConfigError::InvalidValue {
            key: "--tolerance".into(),
            value: t.clone(),
            reason: "expected NAME=VALUE".into(),
        })?;
        entries.push((format!("tolerance.{}", name.trim()), value.trim().to_owned()));
    }
    let mut cfg = ScenarioConfig::from_entries(entries.iter().map(|(k, v)| (k.as_str(), v.as_str())))?;
    cfg.config_file = cli.config.clone();
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    let report = match run_scenario(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let body = emit_report(&report, format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(EXIT_INTERNAL as u8);
    }
    ExitCode::from(if report.pass { EXIT_PASS } else { EXIT_CHECK_FAILURE } as u8)
}
