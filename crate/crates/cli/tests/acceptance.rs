//! Acceptance suite. Every criterion runs at its pinned parameters and
//! tolerances, which are fixed here rather than read from the scenario
//! defaults, and prints one PASS/FAIL line.

use std::process::{Command, ExitCode, Output};
use std::time::Instant;

use jetstress_cli::{emit_report, run_scenario, Format, Report, ScenarioConfig};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Self { pass, detail }
    }
}

fn run(entries: &[(&str, &str)]) -> Report {
    let cfg = ScenarioConfig::from_entries(entries.iter().copied()).expect("valid configuration");
    run_scenario(&cfg).expect("scenario runs")
}

fn measured(r: &Report, name: &str) -> f64 {
    r.checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("{} has no check {name}", r.scenario))
        .measured
}

/// Largest value of `name` over a sweep; NaN poisons the result.
fn sweep_max(reports: &[Report], name: &str) -> f64 {
    reports
        .iter()
        .map(|r| measured(r, name))
        .fold(0.0, |a: f64, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

fn at_most(x: f64, tol: f64) -> bool {
    x <= tol
}

fn stokes() -> Outcome {
    let start = Instant::now();
    let reports: Vec<Report> = ["1", "2", "3"]
        .iter()
        .map(|d| {
            run(&[
                ("scenario", "stokes"),
                ("d", d),
                ("cases", "20"),
                ("quadrature", "8"),
                ("fd_order", "4"),
                ("step", "1e-3"),
            ])
        })
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let r = sweep_max(&reports, "stokes_residual");
    Outcome::new(
        at_most(r, 1e-6) && secs < 5.0,
        format!("stokes oracle, d in 1..=3: max residual {r:.3e} <= 1e-6, {secs:.2} s < 5 s"),
    )
}

fn identity_sweep(scenario: &str, check: &str) -> f64 {
    let mut reports = Vec::new();
    for d in ["1", "2"] {
        for m in ["1", "2"] {
            reports.push(run(&[("scenario", scenario), ("d", d), ("m", m), ("cases", "20"), ("probes", "17")]));
        }
    }
    sweep_max(&reports, check)
}

fn exterior_jet() -> Outcome {
    let r = identity_sweep("exterior_jet_identity", "exterior_jet_residual");
    Outcome::new(
        at_most(r, 1e-6),
        format!("exterior jet identity, 17^d probes, d, m in 1..=2: {r:.3e} <= 1e-6"),
    )
}

fn divergence() -> Outcome {
    let r = identity_sweep("divergence_identity", "divergence_residual");
    Outcome::new(
        at_most(r, 1e-6),
        format!("divergence identity, 17^d probes, d, m in 1..=2: {r:.3e} <= 1e-6"),
    )
}

fn weak_strong() -> Outcome {
    let rep = run(&[("scenario", "weak_strong"), ("d", "2"), ("m", "2"), ("cases", "20")]);
    let r = measured(&rep, "weak_strong_residual");
    Outcome::new(at_most(r, 1e-6), format!("weak/strong equivalence on [0,1]^2: {r:.3e} <= 1e-6"))
}

fn null_stress() -> Outcome {
    let rep = run(&[("scenario", "null_stress"), ("cases", "10")]);
    let power = measured(&rep, "null_stress_power");
    let size = measured(&rep, "null_stress_magnitude");
    Outcome::new(
        at_most(power, 1e-8) && size >= 0.1,
        format!("null stress, 10 bumps x 10 velocities: power {power:.3e} <= 1e-8, magnitude {size:.3} >= 0.1"),
    )
}

fn bar_report() -> Report {
    run(&[("scenario", "hyperelastic_1d_bar"), ("cases", "100")])
}

fn vertical_derivative(bar: &Report) -> Outcome {
    let r = measured(bar, "vertical_derivative_error");
    Outcome::new(
        at_most(r, 1e-6),
        format!("hyperelastic vertical derivative, 100 jet points: {r:.3e} <= 1e-6"),
    )
}

fn energy_variation() -> Outcome {
    let rep = run(&[("scenario", "energy_variation"), ("cases", "10")]);
    let r = measured(&rep, "energy_variation_residual");
    Outcome::new(at_most(r, 1e-6), format!("first variation, 10 triples: {r:.3e} <= 1e-6"))
}

fn bar_bvp(bar: &Report) -> Outcome {
    let interior = measured(bar, "bar_interior_residual");
    let boundary = measured(bar, "bar_boundary_residual");
    let perturbed = measured(bar, "bar_perturbed_interior_residual");
    Outcome::new(
        at_most(interior, 1e-6) && at_most(boundary, 1e-6) && perturbed > 5e-3,
        format!(
            "1D bar: interior {interior:.3e}, boundary {boundary:.3e} <= 1e-6, perturbed {perturbed:.3e} > 5e-3"
        ),
    )
}

fn equilibrated() -> Outcome {
    let rep = run(&[("scenario", "equilibrated_translations"), ("d", "2"), ("m", "2")]);
    let t = measured(&rep, "translation_residual");
    let rot = measured(&rep, "rotation_residual");
    Outcome::new(
        at_most(t, 1e-8) && at_most(rot, 1e-8),
        format!("equilibrated translations: {t:.3e}, rotations {rot:.3e} <= 1e-8"),
    )
}

fn maxwell() -> Outcome {
    let start = Instant::now();
    let rep = run(&[("scenario", "maxwell_vacuum"), ("probes", "9")]);
    let secs = start.elapsed().as_secs_f64();
    let faraday = measured(&rep, "null_wave_faraday");
    let current = measured(&rep, "null_wave_current");
    let non_null_faraday = measured(&rep, "non_null_faraday");
    let non_null = measured(&rep, "non_null_current");
    let forms: Vec<Report> = ["2", "3", "4"]
        .iter()
        .map(|d| run(&[("scenario", "pform_leibniz"), ("d", d), ("cases", "3")]))
        .collect();
    let dd = sweep_max(&forms, "d_squared");
    Outcome::new(
        at_most(faraday, 1e-6)
            && at_most(current, 1e-6)
            && non_null > 0.1
            && at_most(non_null_faraday.max(dd), 1e-6)
            && secs < 60.0,
        format!(
            "maxwell vacuum, 9^4 probes: dF {faraday:.3e}, J {current:.3e} <= 1e-6, \
             non-null J {non_null:.3e} > 0.1, d∘d {:.3e} <= 1e-6, {secs:.2} s < 60 s",
            non_null_faraday.max(dd)
        ),
    )
}

fn jetstress(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetstress")).args(args).output().expect("binary runs")
}

fn cli() -> Outcome {
    let args = ["--scenario", "weak_strong", "--seed", "5"];
    let (a, b) = (jetstress(&args), jetstress(&args));
    let parse = |o: &Output| Report::from_json(std::str::from_utf8(&o.stdout).unwrap()).ok();
    let deterministic = match (parse(&a), parse(&b)) {
        (Some(x), Some(y)) => x
            .checks
            .iter()
            .zip(&y.checks)
            .all(|(p, q)| p.measured.to_bits() == q.measured.to_bits())
            && x.checks.len() == y.checks.len()
            && x.config == y.config,
        _ => false,
    };
    let text = String::from_utf8(jetstress(&["--scenario", "null_stress"]).stdout).unwrap();
    let round_trip = Report::from_json(&text).is_ok_and(|r| emit_report(&r, Format::Json) == text);
    let codes = [
        (jetstress(&["--scenario", "stokes"]), 0),
        (jetstress(&["--scenario", "stokes", "--tolerance", "stokes_residual=1e-30"]), 1),
        (jetstress(&["--scenario", "no_such_scenario"]), 2),
        (jetstress(&["--scenario", "maxwell_vacuum", "--tolerance", "stokes_residual=1"]), 2),
        (jetstress(&["--scenario", "stokes", "--out", "/nonexistent/dir/report.json"]), 3),
    ];
    let exit_codes = codes.iter().all(|(o, want)| o.status.code() == Some(*want));
    Outcome::new(
        deterministic && round_trip && exit_codes,
        format!("CLI: deterministic {deterministic}, JSON round trip {round_trip}, exit codes {exit_codes}"),
    )
}

fn main() -> ExitCode {
    let bar = bar_report();
    let criteria: Vec<(usize, Box<dyn FnOnce() -> Outcome + '_>)> = vec![
        (1, Box::new(stokes)),
        (2, Box::new(exterior_jet)),
        (3, Box::new(divergence)),
        (4, Box::new(weak_strong)),
        (5, Box::new(null_stress)),
        (6, Box::new(|| vertical_derivative(&bar))),
        (7, Box::new(energy_variation)),
        (8, Box::new(|| bar_bvp(&bar))),
        (9, Box::new(equilibrated)),
        (10, Box::new(maxwell)),
        (11, Box::new(cli)),
    ];
    let mut failures = 0;
    for (n, criterion) in criteria {
        let o = criterion();
        println!("{} criterion {n:>2}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failures += usize::from(!o.pass);
    }
    if failures == 0 {
        println!("acceptance: all 11 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of 11 criteria fail");
        ExitCode::FAILURE
    }
}
