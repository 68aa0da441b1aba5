use std::time::Instant;

use jetstress::{
    bvp_residual, constitutive_from_lagrangian, divergence_residual, energy_variation_residual,
    equilibrated_force_residual, equilibrating_force, exterior_derivative, exterior_jet,
    exterior_jet_residual, maxwell_vacuum_check, pform_virtual_power, stokes_residual, total_fn,
    virtual_power_of_stress, wedge, BodyLoadingDensity, BoundaryFace, ChartDomain, Configuration,
    Discretization, FdScheme, FlatMetric, GeneratorField, JetPoint, LagrangianDensity, MixedBlock,
    PForm, PlaneWave, Polynomial, ProbeGrid, QuadratureRule, ScalarField, SurfaceLoadingDensity,
    TractionStressDensity, VariationalStressDensity, VelocityField,
};
use thiserror::Error;

use crate::config::{ConfigError, ScenarioConfig, ScenarioId};
use crate::family::Family;
use crate::report::{Check, Report};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numerical core: {0}")]
    Core(#[from] jetstress::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => crate::EXIT_CONFIG,
            RunError::Core(_) => crate::EXIT_INTERNAL,
        }
    }
}

type Measured = Result<f64, jetstress::Error>;

// f64::max drops NaN; a NaN residual must stay visible
fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn least(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.min(b)
    }
}

struct Recorder<'a> {
    cfg: &'a ScenarioConfig,
    checks: Vec<Check>,
}

impl Recorder<'_> {
    fn push(&mut self, name: &str, measured: f64, seconds: f64) {
        let (tol, bound) = self
            .cfg
            .tolerance(name)
            .unwrap_or_else(|| panic!("check `{name}` missing from the scenario table"));
        self.checks.push(Check::new(name, measured, tol, bound, seconds));
    }

    fn measure(&mut self, name: &str, f: impl FnOnce() -> Measured) -> Result<(), RunError> {
        let start = Instant::now();
        let x = f()?;
        self.push(name, x, start.elapsed().as_secs_f64());
        Ok(())
    }
}

struct Ctx {
    d: usize,
    m: usize,
    cases: usize,
    probes: usize,
    dom: ChartDomain<f64>,
    rule: QuadratureRule<f64>,
    scheme: FdScheme<f64>,
    fam: Family,
}

impl Ctx {
    fn grid(&self) -> ProbeGrid<f64> {
        ProbeGrid::interior(&self.dom, self.probes, &self.scheme)
    }
}

/// Runs every check of the configured scenario. Output is a function of
/// the configuration alone, apart from the wall-time fields.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Report, RunError> {
    let mut ctx = Ctx {
        d: cfg.d,
        m: cfg.m,
        cases: cfg.cases,
        probes: cfg.probes,
        dom: if cfg.scenario == ScenarioId::MaxwellVacuum {
            ChartDomain::unit_torus(cfg.d)?
        } else {
            ChartDomain::unit_box(cfg.d)?
        },
        rule: QuadratureRule::composite(cfg.quadrature, cfg.panels)?,
        scheme: FdScheme::new(cfg.step, cfg.fd_order)?,
        fam: Family::new(cfg.seed),
    };
    let mut rec = Recorder {
        cfg,
        checks: Vec::new(),
    };
    match cfg.scenario {
        ScenarioId::Stokes => stokes(&mut ctx, &mut rec)?,
        ScenarioId::ExteriorJetIdentity => exterior_jet_identity(&mut ctx, &mut rec)?,
        ScenarioId::DivergenceIdentity => divergence_identity(&mut ctx, &mut rec)?,
        ScenarioId::WeakStrong => weak_strong(&mut ctx, &mut rec)?,
        ScenarioId::NullStress => null_stress(&mut ctx, &mut rec, cfg.panels)?,
        ScenarioId::Hyperelastic1dBar => hyperelastic_bar(&mut ctx, &mut rec)?,
        ScenarioId::EnergyVariation => energy_variation(&mut ctx, &mut rec)?,
        ScenarioId::EquilibratedTranslations => equilibrated(&mut ctx, &mut rec)?,
        ScenarioId::MaxwellVacuum => maxwell(&mut ctx, &mut rec)?,
        ScenarioId::PformLeibniz => pform_leibniz(&mut ctx, &mut rec)?,
    }
    Ok(Report::new(cfg, rec.checks))
}

fn stokes(c: &mut Ctx, rec: &mut Recorder) -> Result<(), RunError> {
    rec.measure("stokes_residual", || {
        let mut r = 0.0;
        for _ in 0..c.cases {
            let omega = c.fam.fields(c.d, c.d);
            r = worst(r, stokes_residual(&omega, &c.dom, &c.rule, &c.scheme)?);
        }
        Ok(r)
    })
}

fn exterior_jet_identity(c: &mut Ctx, rec: &mut Recorder) -> Result<(), RunError> {
    let grid = c.grid();
    rec.measure("exterior_jet_residual", || {
        let mut r = 0.0;
        for _ in 0..c.cases {
            let tau = TractionStressDensity::new(c.d, c.m, c.fam.fields(c.d, c.m * c.d))?;
            let v = VelocityField::new(c.fam.fields(c.d, c.m))?;
            r = worst(r, exterior_jet_residual(&tau, &v, &c.dom, &c.scheme, &grid)?);
        }
        Ok(r)
    })
}

fn random_stress(c: &mut Ctx) -> Result<VariationalStressDensity<f64>, jetstress::Error> {
    let lower = c.fam.fields(c.d, c.m);
    let mixed = c.fam.fields(c.d, c.m * c.d);
    VariationalStressDensity::new(c.d, c.m, lower, mixed)
}

fn divergence_identity(c: &mut Ctx, rec: &mut Recorder) -> Result<(), RunError> {
    let grid = c.grid();
    rec.measure("divergence_residual", || {
        let mut r = 0.0;
        for _ in 0..c.cases {
            let s = random_stress(c)?;
            let v = VelocityField::new(c.fam.fields(c.d, c.m))?;
            r = worst(r, divergence_residual(&s, &v, &c.dom, &c.scheme, &grid)?);
        }
        Ok(r)
    })
}

fn weak_strong(c: &mut Ctx, rec: &mut Recorder) -> Result<(), RunError> {
    rec.measure("weak_strong_residual", || {
        let mut r = 0.0;
        for _ in 0..c.cases {
            let s = random_stress(c)?;
            let v = VelocityField::new(c.fam.fields(c.d, c.m))?;
            r = worst(
                r,
                jetstress::weak_strong_consistency(&s, &v, &c.dom, &c.rule, &c.scheme)?,
            );
        }
        Ok(r)
    })
}

fn null_stress(c: &mut Ctx, rec: &mut Recorder, panels: usize) -> Result<(), RunError> {
    let mut nulls = Vec::with_capacity(c.cases);
    for _ in 0..c.cases {
        let comps = (0..c.m * c.d).map(|_| c.fam.panel_bump(c.d, panels)).collect();
        let tau = TractionStressDensity::new(c.d, c.m, comps)?;
        nulls.push(exterior_jet(&tau, &c.dom, &c.scheme)?);
    }
    let velocities = (0..c.cases)
        .map(|_| VelocityField::new(c.fam.fields(c.d, c.m)))
        .collect::<Result<Vec<_>, _>>()?;
    rec.measure("null_stress_power", || {
        let mut r = 0.0;
        for s in &nulls {
            for v in &velocities {
                let w = virtual_power_of_stress(s, v, &c.dom, &c.rule, &c.scheme)?;
                r = worst(r, w.abs());
            }
        }
        Ok(r)
    })?;
    // quadrature nodes sit inside every panel, so each bump is sampled away
    // from its support boundary
    let axis: Vec<f64> = c.rule.on_interval(0.0, 1.0).into_iter().map(|(x, _)| x).collect();
    let mut points = vec![Vec::new()];
    for _ in 0..c.d {
        points = points
            .into_iter()
            .flat_map(|p: Vec<f64>| {
                axis.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let grid = ProbeGrid::from_points(points);
    rec.measure("null_stress_magnitude", || {
        let mut r = f64::INFINITY;
        for s in &nulls {
            let peak = grid.sup(|p| {
                let (lower, mixed) = s.eval(p);
                lower
                    .iter()
                    .chain(mixed.as_slice())
                    .fold(0.0, |m: f64, x| m.max(x.abs()))
            });
            r = least(r, peak);
        }
        Ok(r)
    })
}

fn bar_lagrangian() -> LagrangianDensity<f64> {
    LagrangianDensity::new(1, 1, |j: &JetPoint<f64>| 0.5 * j.gradient.get(0, 0).powi(2))
}

fn quartic_lagrangian() -> LagrangianDensity<f64> {
    LagrangianDensity::new(1, 1, |j: &JetPoint<f64>| {
        0.25 * j.gradient.get(0, 0).powi(4) + j.value[0].powi(2)
    })
}

fn hyperelastic_bar(c: &mut Ctx, rec: &mut Recorder) -> Result<(), RunError> {
    let vertical = Discretization::<f64>::default().vertical;
    rec.measure("vertical_derivative_error", || {
        let psi_bar = constitutive_from_lagrangian(&bar_lagrangian(), &vertical);
        let psi_quartic = constitutive_from_lagrangian(&quartic_lagrangian(), &vertical);
        let mut r = 0.0;
        for _ in 0..c.cases {
            let (x, xp) = (c.fam.uniform(-2.0, 2.0), c.fam.uniform(-2.0, 2.0));
            let j = JetPoint {
                base: vec![c.fam.uniform(0.0, 1.0)],
                value: vec![x],
                gradient: MixedBlock::from_row_major(1, 1, vec![xp])?,
            };
            let (l, m) = psi_bar.eval(&j);
            r = worst(r, l[0].abs().max((m.get(0, 0) - xp).abs()));
            let (l, m) = psi_quartic.eval(&j);
            r = worst(r, (l[0] - 2.0 * x).abs().max((m.get(0, 0) - xp.powi(3)).abs()));
        }
        Ok(r)
    })?;

    // L = ½x'², κ = X²/2: 𝔹 = −1, 𝕋 = 1 on X = 1 and 0 on X = 0
    let psi = constitutive_from_lagrangian(&bar_lagrangian(), &vertical);
    let body = BodyLoadingDensity::new(vec![total_fn(|_, _| -1.0)]);
    let surface = SurfaceLoadingDensity::new(vec![
        (BoundaryFace::upper(0), vec![total_fn(|_, _| 1.0)]),
        (BoundaryFace::lower(0), vec![total_fn(|_, _| 0.0)]),
    ]);
    let quadratic = |a: f64| {
        let p = Polynomial::dense(1, 2, [0.0, 0.0, a]);
        Configuration::new(vec![p.to_field()])
    };
    let start = Instant::now();
    let exact = bvp_residual(&quadratic(0.5)?, &psi, &body, &surface, &c.dom, &c.scheme, c.probes)?;
    let t = start.elapsed().as_secs_f64();
    rec.push("bar_interior_residual", exact.interior, t);
    rec.push("bar_boundary_residual", exact.boundary, t);
    rec.measure("bar_perturbed_interior_residual", || {
        let off = bvp_residual(&quadratic(0.5 + 1e-2)?, &psi, &body, &surface, &c.dom, &c.scheme, c.probes)?;
        Ok(off.interior)
    })
}

fn energy_variation(c: &mut Ctx, rec: &mut Recorder) -> Result<(), RunError> {
    let disc = Discretization {
        rule: c.rule.clone(),
        scheme: c.scheme,
        ..Discretization::default()
    };
    rec.measure("energy_variation_residual", || {
        let mut r = 0.0;
        for _ in 0..c.cases {
            let kappa = Configuration::new(vec![c.fam.field(1)])?;
            let v = VelocityField::new(vec![c.fam.field(1)])?;
            let k: [f64; 4] = std::array::from_fn(|_| c.fam.coefficient());
            let lagrangian = LagrangianDensity::new(1, 1, move |j: &JetPoint<f64>| {
                let (x, xp) = (j.value[0], j.gradient.get(0, 0));
                k[0] * 0.5 * xp * xp + k[1] * 0.25 * xp.powi(4) + k[2] * x * x + k[3] * j.base[0] * x * xp
            });
            r = worst(r, energy_variation_residual(&kappa, &v, &lagrangian, &c.dom, &disc)?);
        }
        Ok(r)
    })
}

fn equilibrated(c: &mut Ctx, rec: &mut Recorder) -> Result<(), RunError> {
    let translations = GeneratorField::translations(c.m);
    rec.measure("translation_residual", || {
        let mut r = 0.0;
        for _ in 0..c.cases {
            let mixed = c.fam.fields(c.d, c.m * c.d);
            let s = VariationalStressDensity::new(c.d, c.m, vec![ScalarField::zero(); c.m], mixed)?;
            let f = equilibrating_force(&s, &c.dom, &c.scheme)?;
            for x in equilibrated_force_residual(&f, &translations, &c.dom, &c.rule)? {
                r = worst(r, x);
            }
        }
        Ok(r)
    })?;
    if c.d < 2 || c.m < 2 {
        return Ok(());
    }
    // placement κ^i = X^i; a stress with s_0^1 = s_1^0 is balanced under the (0, 1) rotation
    let kappa = Configuration::new(
        (0..c.m)
            .map(|i| if i < c.d { ScalarField::coordinate(i) } else { ScalarField::zero() })
            .collect(),
    )?;
    let rotation = [GeneratorField::rotation(&kappa, 0, 1)];
    rec.measure("rotation_residual", || {
        let mut r = 0.0;
        for _ in 0..c.cases {
            let mut mixed = c.fam.fields(c.d, c.m * c.d);
            mixed[c.d] = mixed[1].clone();
            let s = VariationalStressDensity::new(c.d, c.m, vec![ScalarField::zero(); c.m], mixed)?;
            let f = equilibrating_force(&s, &c.dom, &c.scheme)?;
            r = worst(r, equilibrated_force_residual(&f, &rotation, &c.dom, &c.rule)?[0]);
        }
        Ok(r)
    })
}

fn plane_wave_potential(k: [f64; 4], polarization: [f64; 4], phase: f64) -> PForm<f64> {
    let wave = PlaneWave {
        amplitude: 1.0,
        wavevector: k.iter().map(|x| x * std::f64::consts::TAU).collect(),
        phase,
    }
    .to_field();
    let comps = polarization.iter().map(|&e| wave.scaled(e)).collect();
    PForm::new(4, 1, comps).expect("four components of a 1-form")
}

fn maxwell(c: &mut Ctx, rec: &mut Recorder) -> Result<(), RunError> {
    let metric = FlatMetric::minkowski(4);
    let (mut faraday, mut current) = (0.0, 0.0);
    let start = Instant::now();
    let mut waves = Vec::with_capacity(c.cases);
    for _ in 0..c.cases {
        // k = (1, ±e_s) is null; ε = a e_j + g k with j ∉ {0, s} is transverse
        let s = 1 + c.fam.index(3);
        let j = 1 + (s + c.fam.index(2)) % 3;
        let sign = if c.fam.index(2) == 0 { 1.0 } else { -1.0 };
        let (amp, gauge, phase) = (c.fam.uniform(0.5, 1.0), c.fam.coefficient(), c.fam.uniform(0.0, 1.0));
        let mut k = [1.0, 0.0, 0.0, 0.0];
        k[s] = sign;
        let mut eps = k.map(|x| gauge * x);
        eps[j] += amp;
        let a = plane_wave_potential(k, eps, phase);
        let r = maxwell_vacuum_check(&a, &metric, &c.dom, &c.scheme, c.probes)?;
        faraday = worst(faraday, r.faraday);
        current = worst(current, r.current);
        waves.push((s, j, amp, phase));
    }
    let t = start.elapsed().as_secs_f64();
    rec.push("null_wave_faraday", faraday, t);
    rec.push("null_wave_current", current, t);

    let (mut faraday, mut current) = (0.0, f64::INFINITY);
    let start = Instant::now();
    for (s, j, amp, phase) in waves {
        let mut k = [0.0; 4];
        k[s] = 1.0;
        let mut eps = [0.0; 4];
        eps[j] = amp;
        let r = maxwell_vacuum_check(&plane_wave_potential(k, eps, phase), &metric, &c.dom, &c.scheme, c.probes)?;
        faraday = worst(faraday, r.faraday);
        current = least(current, r.current);
    }
    let t = start.elapsed().as_secs_f64();
    rec.push("non_null_faraday", faraday, t);
    rec.push("non_null_current", current, t);
    Ok(())
}

fn pform_leibniz(c: &mut Ctx, rec: &mut Recorder) -> Result<(), RunError> {
    let d = c.d;
    let grid = c.grid();
    rec.measure("graded_leibniz", || {
        let mut r = 0.0;
        for _ in 0..c.cases {
            let p = c.fam.index(d);
            let q = c.fam.index(d - p);
            let a = c.fam.poly_form(d, p);
            let b = c.fam.poly_form(d, q);
            let lhs = exterior_derivative(&wedge(&a, &b)?, &c.dom, &c.scheme)?;
            let da = exterior_derivative(&a, &c.dom, &c.scheme)?;
            let db = exterior_derivative(&b, &c.dom, &c.scheme)?;
            let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
            let rhs = wedge(&da, &b)?.add(&wedge(&a, &db)?.scaled(sign))?;
            r = worst(r, lhs.add(&rhs.scaled(-1.0))?.sup_norm(&grid));
        }
        Ok(r)
    })?;
    rec.measure("d_squared", || {
        let mut r = 0.0;
        for _ in 0..c.cases {
            let p = c.fam.index(d);
            let a = c.fam.poly_form(d, p);
            let da = exterior_derivative(&a, &c.dom, &c.scheme)?;
            r = worst(r, exterior_derivative(&da, &c.dom, &c.scheme)?.sup_norm(&grid));
        }
        Ok(r)
    })?;
    rec.measure("wedge_anticommutativity", || {
        let mut r = 0.0;
        for _ in 0..c.cases {
            let p = c.fam.index(d + 1);
            let q = c.fam.index(d + 1 - p);
            let a = c.fam.poly_form(d, p);
            let b = c.fam.poly_form(d, q);
            let sign = if (p * q).is_multiple_of(2) { 1.0 } else { -1.0 };
            let diff = wedge(&a, &b)?.add(&wedge(&b, &a)?.scaled(-sign))?;
            r = worst(r, diff.sup_norm(&grid));
        }
        Ok(r)
    })?;
    let torus = ChartDomain::unit_torus(d)?;
    rec.measure("torus_virtual_power", || {
        let mut r = 0.0;
        let zero = PForm::zero(d, d)?;
        for _ in 0..c.cases {
            let p = c.fam.index(d);
            let v = c.fam.sine_form(d, p);
            let g = c.fam.sine_form(d, d - p - 1);
            r = worst(r, pform_virtual_power(&g, &v, &zero, &torus, &c.rule, &c.scheme)?.abs());
        }
        Ok(r)
    })
}
