//! Constitutive densities over jet coordinates, hyperelastic densities
//! derived from a Lagrangian, loading densities derived from potentials,
//! their pullback along a configuration, the total energy and its first
//! variation, and the strong-form boundary value residual.
//!
//! Field equations use the invariant form `div s + b = 0` with
//! `div s = ∂_α s_i^α − s_i`, so the interior residual of a constitutive
//! problem is `∂_α ψ_i^α − ψ_i + 𝔹_i`. Boundary conditions read
//! `±ψ_i^a = 𝕋_i` on the face normal to axis `a`, with the sign of the
//! face orientation.

use std::fmt;
use std::sync::Arc;

use crate::chart::{
    central_difference, integrate_face_fn, integrate_fn, BoundaryFace, ChartDomain, FdOrder,
    FdScheme, QuadratureRule, ScalarField, Smoothness,
};
use crate::error::{Error, Result};
use crate::forces::{
    equilibrium_residuals, BodyForceDensity, EquilibriumResiduals, FaceTraction,
    ForceFunctional, SurfaceForceDensity,
};
use crate::jet::{check_fiber, jet_prolong_config, Configuration, JetPoint, MixedBlock, VelocityField};
use crate::scalar::Scalar;
use crate::stress::{virtual_power_of_stress, VariationalStressDensity};

/// A scalar function on the first jet bundle, `(X, x, x') ↦ value`.
pub type JetFunction<T> = Arc<dyn Fn(&JetPoint<T>) -> T + Send + Sync>;

/// A scalar function on the total space, `(X, x) ↦ value`.
pub type TotalFunction<T> = Arc<dyn Fn(&[T], &[T]) -> T + Send + Sync>;

pub fn jet_fn<T>(f: impl Fn(&JetPoint<T>) -> T + Send + Sync + 'static) -> JetFunction<T> {
    Arc::new(f)
}

pub fn total_fn<T>(f: impl Fn(&[T], &[T]) -> T + Send + Sync + 'static) -> TotalFunction<T> {
    Arc::new(f)
}

/// Step, accuracy and time-step settings shared by the energy routines.
#[derive(Clone, Debug, PartialEq)]
pub struct Discretization<T> {
    pub rule: QuadratureRule<T>,
    /// Base-direction differences.
    pub scheme: FdScheme<T>,
    /// Fiber and jet-direction differences; the step is relative to
    /// `max(1, |coordinate|)`.
    pub vertical: FdScheme<T>,
    /// Step of the central difference in the variation parameter.
    pub time_step: T,
}

impl<T: Scalar> Default for Discretization<T> {
    fn default() -> Self {
        Self {
            rule: QuadratureRule::default(),
            scheme: FdScheme::default(),
            vertical: FdScheme::new(T::lit(1e-4), FdOrder::Fourth).expect("positive step"),
            time_step: T::lit(1e-4),
        }
    }
}

/// `ψ = (ψ_i dx^i + ψ_i^α (dx)^i_α) ⊗ dX` with components on jet space.
#[derive(Clone)]
pub struct ConstitutiveDensity<T> {
    base_dim: usize,
    fiber_dim: usize,
    lower: Vec<JetFunction<T>>,
    mixed: Vec<JetFunction<T>>,
    smoothness: Smoothness,
}

impl<T> fmt::Debug for ConstitutiveDensity<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConstitutiveDensity")
            .field("base_dim", &self.base_dim)
            .field("fiber_dim", &self.fiber_dim)
            .field("smoothness", &self.smoothness)
            .finish_non_exhaustive()
    }
}

impl<T: Scalar> ConstitutiveDensity<T> {
    /// `mixed` is row-major in `(i, α)`.
    pub fn new(
        base_dim: usize,
        fiber_dim: usize,
        lower: Vec<JetFunction<T>>,
        mixed: Vec<JetFunction<T>>,
        smoothness: Smoothness,
    ) -> Result<Self> {
        check_fiber("constitutive lower block", fiber_dim, lower.len())?;
        check_fiber("constitutive mixed block", fiber_dim * base_dim, mixed.len())?;
        Ok(Self {
            base_dim,
            fiber_dim,
            lower,
            mixed,
            smoothness,
        })
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn eval(&self, j: &JetPoint<T>) -> (Vec<T>, MixedBlock<T>) {
        let lower = self.lower.iter().map(|f| f(j)).collect();
        let mixed = MixedBlock::from_fn(self.fiber_dim, self.base_dim, |i, a| {
            (self.mixed[i * self.base_dim + a])(j)
        });
        (lower, mixed)
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Result<Self> {
        check_fiber("constitutive fiber", self.fiber_dim, other.fiber_dim)?;
        check_fiber("constitutive base", self.base_dim, other.base_dim)?;
        let mix = |f: &JetFunction<T>, g: &JetFunction<T>| -> JetFunction<T> {
            let (f, g) = (f.clone(), g.clone());
            Arc::new(move |j| a * f(j) + b * g(j))
        };
        Ok(Self {
            base_dim: self.base_dim,
            fiber_dim: self.fiber_dim,
            lower: self.lower.iter().zip(&other.lower).map(|(f, g)| mix(f, g)).collect(),
            mixed: self.mixed.iter().zip(&other.mixed).map(|(f, g)| mix(f, g)).collect(),
            smoothness: self.smoothness.min(other.smoothness),
        })
    }
}

/// Lagrangian density `𝓛 = L(X, x, x') dX`.
#[derive(Clone)]
pub struct LagrangianDensity<T> {
    base_dim: usize,
    fiber_dim: usize,
    density: JetFunction<T>,
}

impl<T> fmt::Debug for LagrangianDensity<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LagrangianDensity")
            .field("base_dim", &self.base_dim)
            .field("fiber_dim", &self.fiber_dim)
            .finish_non_exhaustive()
    }
}

impl<T: Scalar> LagrangianDensity<T> {
    pub fn new(
        base_dim: usize,
        fiber_dim: usize,
        density: impl Fn(&JetPoint<T>) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            base_dim,
            fiber_dim,
            density: Arc::new(density),
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn eval(&self, j: &JetPoint<T>) -> T {
        (self.density)(j)
    }

    /// `L + c`.
    pub fn shifted(&self, c: T) -> Self {
        let f = self.density.clone();
        Self {
            base_dim: self.base_dim,
            fiber_dim: self.fiber_dim,
            density: Arc::new(move |j| f(j) + c),
        }
    }
}

/// `𝔹 = 𝔹_i(X, x) dx^i ⊗ dX`.
#[derive(Clone)]
pub struct BodyLoadingDensity<T> {
    components: Vec<TotalFunction<T>>,
}

/// `𝕋` on each loaded face; unlisted faces carry no load.
#[derive(Clone)]
pub struct SurfaceLoadingDensity<T> {
    faces: Vec<(BoundaryFace, Vec<TotalFunction<T>>)>,
}

impl<T: Scalar> BodyLoadingDensity<T> {
    pub fn new(components: Vec<TotalFunction<T>>) -> Self {
        Self { components }
    }

    pub fn zero(fiber_dim: usize) -> Self {
        Self::new((0..fiber_dim).map(|_| total_fn(|_, _| T::zero())).collect())
    }

    pub fn fiber_dim(&self) -> usize {
        self.components.len()
    }

    pub fn eval(&self, base: &[T], x: &[T]) -> Vec<T> {
        self.components.iter().map(|f| f(base, x)).collect()
    }

    /// `κ*𝔹`.
    pub fn pullback(&self, kappa: &Configuration<T>) -> Result<BodyForceDensity<T>> {
        check_fiber("configuration", self.fiber_dim(), kappa.fiber_dim())?;
        let components = self
            .components
            .iter()
            .map(|f| {
                let (f, k) = (f.clone(), kappa.clone());
                ScalarField::new(k.smoothness(), move |p| f(p, &k.eval(p)))
            })
            .collect();
        BodyForceDensity::new(components)
    }
}

impl<T: Scalar> SurfaceLoadingDensity<T> {
    pub fn new(faces: Vec<(BoundaryFace, Vec<TotalFunction<T>>)>) -> Self {
        Self { faces }
    }

    pub fn none() -> Self {
        Self { faces: Vec::new() }
    }

    pub fn faces(&self) -> impl Iterator<Item = (BoundaryFace, &[TotalFunction<T>])> {
        self.faces.iter().map(|(f, c)| (*f, c.as_slice()))
    }

    pub fn on(&self, face: BoundaryFace) -> Option<&[TotalFunction<T>]> {
        self.faces
            .iter()
            .find(|(f, _)| *f == face)
            .map(|(_, c)| c.as_slice())
    }

    /// `(κ|∂)*𝕋`.
    pub fn pullback(&self, kappa: &Configuration<T>) -> Result<SurfaceForceDensity<T>> {
        let faces = self
            .faces
            .iter()
            .map(|(face, comps)| {
                check_fiber("configuration", comps.len(), kappa.fiber_dim())?;
                let fields = comps
                    .iter()
                    .map(|f| {
                        let (f, k) = (f.clone(), kappa.clone());
                        ScalarField::new(k.smoothness(), move |p| f(p, &k.eval(p)))
                    })
                    .collect();
                FaceTraction::new(*face, fields)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SurfaceForceDensity::new(faces))
    }
}

/// Loading potential densities `w_𝓑(X, x)` and per-face `w_∂𝓑(X, x)`.
#[derive(Clone)]
pub struct PotentialDensities<T> {
    pub body: TotalFunction<T>,
    pub surface: Vec<(BoundaryFace, TotalFunction<T>)>,
}

impl<T: Scalar> PotentialDensities<T> {
    pub fn zero() -> Self {
        Self {
            body: total_fn(|_, _| T::zero()),
            surface: Vec::new(),
        }
    }
}

/// `s = (j¹κ)*ψ`: every component evaluated on `(X, κ(X), Dκ(X))`.
pub fn pullback_constitutive<T: Scalar>(
    psi: &ConstitutiveDensity<T>,
    kappa: &Configuration<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> Result<VariationalStressDensity<T>> {
    check_fiber("configuration", psi.fiber_dim, kappa.fiber_dim())?;
    check_fiber("constitutive base", domain.dim(), psi.base_dim)?;
    let xi = jet_prolong_config(kappa, domain, scheme)?;
    let smooth = kappa.smoothness().derivative().min(psi.smoothness);
    let pull = |f: &JetFunction<T>| {
        let (f, xi) = (f.clone(), xi.clone());
        ScalarField::new(smooth, move |p| f(&xi.point(p)))
    };
    VariationalStressDensity::new(
        psi.base_dim,
        psi.fiber_dim,
        psi.lower.iter().map(pull).collect(),
        psi.mixed.iter().map(pull).collect(),
    )
}

fn relative_step<T: Scalar>(vertical: &FdScheme<T>, x: T) -> T {
    vertical.step() * T::one().max(x.abs())
}

/// Hyperelastic density `ψ = dL|_V`: `ψ_i = ∂L/∂x^i`, `ψ_i^α = ∂L/∂x'^i_α`,
/// by central differences in the jet coordinates.
pub fn constitutive_from_lagrangian<T: Scalar>(
    lagrangian: &LagrangianDensity<T>,
    vertical: &FdScheme<T>,
) -> ConstitutiveDensity<T> {
    let (d, m) = (lagrangian.base_dim, lagrangian.fiber_dim);
    let vs = *vertical;
    let lower = (0..m)
        .map(|i| {
            let l = lagrangian.density.clone();
            jet_fn(move |j: &JetPoint<T>| {
                let x0 = j.value[i];
                let mut probe = j.clone();
                central_difference(
                    |x| {
                        probe.value[i] = x;
                        l(&probe)
                    },
                    x0,
                    relative_step(&vs, x0),
                    vs.order(),
                )
            })
        })
        .collect();
    let mixed = (0..m)
        .flat_map(|i| (0..d).map(move |a| (i, a)))
        .map(|(i, a)| {
            let l = lagrangian.density.clone();
            jet_fn(move |j: &JetPoint<T>| {
                let x0 = j.gradient.get(i, a);
                let mut probe = j.clone();
                central_difference(
                    |x| {
                        probe.gradient.set(i, a, x);
                        l(&probe)
                    },
                    x0,
                    relative_step(&vs, x0),
                    vs.order(),
                )
            })
        })
        .collect();
    ConstitutiveDensity {
        base_dim: d,
        fiber_dim: m,
        lower,
        mixed,
        smoothness: Smoothness::C1,
    }
}

fn vertical_gradient<T: Scalar>(
    w: &TotalFunction<T>,
    m: usize,
    vertical: &FdScheme<T>,
) -> Vec<TotalFunction<T>> {
    let vs = *vertical;
    (0..m)
        .map(|i| {
            let w = w.clone();
            total_fn(move |base: &[T], x: &[T]| {
                let mut probe = x.to_vec();
                let d = central_difference(
                    |xi| {
                        probe[i] = xi;
                        w(base, &probe)
                    },
                    x[i],
                    relative_step(&vs, x[i]),
                    vs.order(),
                );
                -d
            })
        })
        .collect()
}

/// Loadings of a potential: `𝔹_i = −∂w_𝓑/∂x^i`, `𝕋_i = −∂w_∂𝓑/∂x^i`.
pub fn loading_from_potential<T: Scalar>(
    w: &PotentialDensities<T>,
    fiber_dim: usize,
    vertical: &FdScheme<T>,
) -> (BodyLoadingDensity<T>, SurfaceLoadingDensity<T>) {
    let body = BodyLoadingDensity::new(vertical_gradient(&w.body, fiber_dim, vertical));
    let surface = SurfaceLoadingDensity::new(
        w.surface
            .iter()
            .map(|(face, ws)| (*face, vertical_gradient(ws, fiber_dim, vertical)))
            .collect(),
    );
    (body, surface)
}

/// `∫ L∘j¹κ`.
pub fn internal_energy<T: Scalar>(
    kappa: &Configuration<T>,
    lagrangian: &LagrangianDensity<T>,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
    scheme: &FdScheme<T>,
) -> Result<T> {
    check_fiber("configuration", lagrangian.fiber_dim, kappa.fiber_dim())?;
    let xi = jet_prolong_config(kappa, domain, scheme)?;
    Ok(integrate_fn(&|p: &[T]| lagrangian.eval(&xi.point(p)), domain, rule))
}

/// `∫ L∘j¹κ + ∫ w_𝓑∘κ + Σ_faces ∫ w_∂𝓑∘κ`.
///
/// Surface potentials are densities against the outward face measure, like
/// surface loadings.
pub fn total_energy<T: Scalar>(
    kappa: &Configuration<T>,
    lagrangian: &LagrangianDensity<T>,
    w: &PotentialDensities<T>,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
    scheme: &FdScheme<T>,
) -> Result<T> {
    let mut e = internal_energy(kappa, lagrangian, domain, rule, scheme)?;
    e += integrate_fn(&|p: &[T]| (w.body)(p, &kappa.eval(p)), domain, rule);
    for (face, ws) in &w.surface {
        domain.check_face(*face)?;
        e += integrate_face_fn(&|p: &[T]| ws(p, &kappa.eval(p)), *face, domain, rule);
    }
    Ok(e)
}

/// `d/dt|₀ U(κ + t v)` against `∫ ((j¹κ)*dL|_V)∘j¹v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyVariation<T> {
    pub energy_rate: T,
    pub stress_power: T,
}

impl<T: Scalar> EnergyVariation<T> {
    pub fn residual(&self) -> T {
        (self.energy_rate - self.stress_power).abs()
    }
}

pub fn energy_variation<T: Scalar>(
    kappa: &Configuration<T>,
    v: &VelocityField<T>,
    lagrangian: &LagrangianDensity<T>,
    domain: &ChartDomain<T>,
    disc: &Discretization<T>,
) -> Result<EnergyVariation<T>> {
    check_fiber("velocity", kappa.fiber_dim(), v.fiber_dim())?;
    let energy_at = |t: T| -> Result<T> {
        let moved = kappa.displaced(v, t)?;
        internal_energy(&moved, lagrangian, domain, &disc.rule, &disc.scheme)
    };
    // evaluate eagerly so errors surface before differencing
    let h = disc.time_step;
    let samples: Vec<T> = match disc.vertical.order() {
        FdOrder::Second => vec![energy_at(-h)?, energy_at(h)?],
        FdOrder::Fourth => vec![energy_at(-h - h)?, energy_at(-h)?, energy_at(h)?, energy_at(h + h)?],
    };
    let energy_rate = match disc.vertical.order() {
        FdOrder::Second => (samples[1] - samples[0]) / (h + h),
        FdOrder::Fourth => {
            ((samples[0] - samples[3]) + T::lit(8.0) * (samples[2] - samples[1]))
                / (T::lit(12.0) * h)
        }
    };
    let psi = constitutive_from_lagrangian(lagrangian, &disc.vertical);
    let s = pullback_constitutive(&psi, kappa, domain, &disc.scheme)?;
    let stress_power = virtual_power_of_stress(&s, v, domain, &disc.rule, &disc.scheme)?;
    Ok(EnergyVariation {
        energy_rate,
        stress_power,
    })
}

/// `|d/dt|₀ U(κ + t v) − ∫ s∘j¹v|` with `s` the pulled-back hyperelastic
/// stress of `L`.
pub fn energy_variation_residual<T: Scalar>(
    kappa: &Configuration<T>,
    v: &VelocityField<T>,
    lagrangian: &LagrangianDensity<T>,
    domain: &ChartDomain<T>,
    disc: &Discretization<T>,
) -> Result<T> {
    Ok(energy_variation(kappa, v, lagrangian, domain, disc)?.residual())
}

/// Strong-form residuals of `div((j¹κ)*ψ) + κ*𝔹 = 0` in the interior and
/// `𝓒(P∘(j¹κ)*ψ) = κ*𝕋` on the faces.
pub fn bvp_residual<T: Scalar>(
    kappa: &Configuration<T>,
    psi: &ConstitutiveDensity<T>,
    body: &BodyLoadingDensity<T>,
    surface: &SurfaceLoadingDensity<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
    probes_per_axis: usize,
) -> Result<EquilibriumResiduals<T>> {
    if kappa.smoothness() < Smoothness::C2 {
        return Err(Error::NotDifferentiable {
            what: "configuration",
            required: Smoothness::C2,
            found: kappa.smoothness(),
        });
    }
    let s = pullback_constitutive(psi, kappa, domain, scheme)?;
    let force = ForceFunctional::new(body.pullback(kappa)?, surface.pullback(kappa)?);
    equilibrium_residuals(&s, &force, domain, scheme, probes_per_axis)
}
