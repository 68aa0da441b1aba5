//! Variational and traction stress densities along a fixed configuration,
//! and the operators relating them: traction extraction, the exterior jet,
//! the divergence and the Cauchy restriction to boundary faces.
//!
//! Stress components are stored as fields over the base, already composed
//! with `j¹κ`, so every `∂_α` below is a total base derivative.
//!
//! | operator | components |
//! |---|---|
//! | pairing `s∘j¹v` | `s_i v^i + s_i^α ∂_α v^i` |
//! | traction `P∘s` | `τ_i^α = s_i^α` |
//! | exterior jet `𝔡τ` | `(∂_α τ_i^α, τ_i^α)` |
//! | divergence `div s` | `∂_α s_i^α − s_i` |
//! | Cauchy `𝓒τ` on a face normal to `a` | `±τ_i^a` |

use crate::chart::{
    check_scheme, fd_partial, integrate_fn, require, BoundaryFace, ChartDomain, FdScheme,
    ProbeGrid, QuadratureRule, ScalarField, Smoothness,
};
use crate::error::{Error, Result};
use crate::forces::{BodyForceDensity, FaceTraction};
use crate::jet::{check_fiber, jet_prolong_velocity, MixedBlock, VelocityField, VelocityJet};
use crate::scalar::Scalar;

/// `s = (s_i dx^i + s_i^α (dx)^i_α) ⊗ dX` along a jet field.
#[derive(Clone, Debug)]
pub struct VariationalStressDensity<T> {
    base_dim: usize,
    fiber_dim: usize,
    lower: Vec<ScalarField<T>>,
    // row-major, index i * d + α
    mixed: Vec<ScalarField<T>>,
}

impl<T: Scalar> VariationalStressDensity<T> {
    pub fn new(
        base_dim: usize,
        fiber_dim: usize,
        lower: Vec<ScalarField<T>>,
        mixed: Vec<ScalarField<T>>,
    ) -> Result<Self> {
        check_fiber("lower stress block", fiber_dim, lower.len())?;
        check_fiber("mixed stress block", fiber_dim * base_dim, mixed.len())?;
        Ok(Self {
            base_dim,
            fiber_dim,
            lower,
            mixed,
        })
    }

    pub fn zero(base_dim: usize, fiber_dim: usize) -> Self {
        Self {
            base_dim,
            fiber_dim,
            lower: vec![ScalarField::zero(); fiber_dim],
            mixed: vec![ScalarField::zero(); fiber_dim * base_dim],
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn lower(&self, i: usize) -> &ScalarField<T> {
        &self.lower[i]
    }

    pub fn mixed(&self, i: usize, alpha: usize) -> &ScalarField<T> {
        &self.mixed[i * self.base_dim + alpha]
    }

    pub fn lower_block(&self) -> &[ScalarField<T>] {
        &self.lower
    }

    pub fn mixed_block(&self) -> &[ScalarField<T>] {
        &self.mixed
    }

    pub fn eval(&self, p: &[T]) -> (Vec<T>, MixedBlock<T>) {
        let lower = self.lower.iter().map(|f| f.eval(p)).collect();
        let mixed = MixedBlock::from_fn(self.fiber_dim, self.base_dim, |i, a| {
            self.mixed(i, a).eval(p)
        });
        (lower, mixed)
    }

    pub fn scaled(&self, c: T) -> Self {
        Self {
            base_dim: self.base_dim,
            fiber_dim: self.fiber_dim,
            lower: self.lower.iter().map(|f| f.scaled(c)).collect(),
            mixed: self.mixed.iter().map(|f| f.scaled(c)).collect(),
        }
    }
}

/// `τ = τ_i^α dx^i ⊗ (∂_α ⌟ dX)`.
#[derive(Clone, Debug)]
pub struct TractionStressDensity<T> {
    base_dim: usize,
    fiber_dim: usize,
    tau: Vec<ScalarField<T>>,
}

impl<T: Scalar> TractionStressDensity<T> {
    pub fn new(base_dim: usize, fiber_dim: usize, tau: Vec<ScalarField<T>>) -> Result<Self> {
        check_fiber("traction block", fiber_dim * base_dim, tau.len())?;
        Ok(Self {
            base_dim,
            fiber_dim,
            tau,
        })
    }

    pub fn zero(base_dim: usize, fiber_dim: usize) -> Self {
        Self {
            base_dim,
            fiber_dim,
            tau: vec![ScalarField::zero(); fiber_dim * base_dim],
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn component(&self, i: usize, alpha: usize) -> &ScalarField<T> {
        &self.tau[i * self.base_dim + alpha]
    }

    pub fn components(&self) -> &[ScalarField<T>] {
        &self.tau
    }

    pub fn eval(&self, p: &[T]) -> MixedBlock<T> {
        MixedBlock::from_fn(self.fiber_dim, self.base_dim, |i, a| {
            self.component(i, a).eval(p)
        })
    }

    /// Coefficients of the (d−1)-form `τ∘v = (τ_i^α v^i)(∂_α ⌟ dX)`.
    pub fn apply(&self, v: &VelocityField<T>) -> Result<Vec<ScalarField<T>>> {
        check_fiber("velocity", self.fiber_dim, v.fiber_dim())?;
        Ok((0..self.base_dim)
            .map(|a| {
                let taus: Vec<_> = (0..self.fiber_dim)
                    .map(|i| self.component(i, a).clone())
                    .collect();
                let vs = v.components().to_vec();
                let smooth = taus
                    .iter()
                    .chain(&vs)
                    .map(|f| f.smoothness())
                    .min()
                    .unwrap_or(Smoothness::C2);
                ScalarField::new(smooth, move |p| {
                    let mut acc = T::zero();
                    for (t, w) in taus.iter().zip(&vs) {
                        acc += t.eval(p) * w.eval(p);
                    }
                    acc
                })
            })
            .collect())
    }
}

fn check_pairing<T: Scalar>(s: &VariationalStressDensity<T>, eta: &VelocityJet<T>) -> Result<()> {
    check_fiber("velocity jet fiber", s.fiber_dim, eta.fiber_dim())?;
    check_fiber("velocity jet base", s.base_dim, eta.base_dim())
}

fn pair_at<T: Scalar>(s: &VariationalStressDensity<T>, eta: &VelocityJet<T>, p: &[T]) -> T {
    let jet = eta.eval(p);
    let mut acc = T::zero();
    for i in 0..s.fiber_dim {
        acc += s.lower[i].eval(p) * jet.value[i];
        for a in 0..s.base_dim {
            acc += s.mixed(i, a).eval(p) * jet.gradient.get(i, a);
        }
    }
    acc
}

/// Coefficient of `dX` in `s∘η` at `p`: `s_i ẋ^i + s_i^α ẋ'^i_α`.
pub fn stress_pairing<T: Scalar>(
    s: &VariationalStressDensity<T>,
    eta: &VelocityJet<T>,
    p: &[T],
) -> Result<T> {
    check_pairing(s, eta)?;
    check_fiber("base point", s.base_dim, p.len())?;
    Ok(pair_at(s, eta, p))
}

/// `∫ s∘j¹v`, the virtual power the stress expends on `v`.
pub fn virtual_power_of_stress<T: Scalar>(
    s: &VariationalStressDensity<T>,
    v: &VelocityField<T>,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
    scheme: &FdScheme<T>,
) -> Result<T> {
    check_fiber("stress base", domain.dim(), s.base_dim)?;
    let eta = jet_prolong_velocity(v, domain, scheme)?;
    check_pairing(s, &eta)?;
    Ok(integrate_fn(&|p: &[T]| pair_at(s, &eta, p), domain, rule))
}

/// `P∘s`: keeps the mixed block, drops `s_i`.
pub fn traction_extract<T: Scalar>(s: &VariationalStressDensity<T>) -> TractionStressDensity<T> {
    TractionStressDensity {
        base_dim: s.base_dim,
        fiber_dim: s.fiber_dim,
        tau: s.mixed.clone(),
    }
}

/// `Σ_α ∂_α f_α` as a field, one stencil pass per axis.
fn divergence_field<T: Scalar>(
    row: Vec<ScalarField<T>>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> ScalarField<T> {
    let smooth = row
        .iter()
        .map(|f| f.smoothness().derivative())
        .min()
        .unwrap_or(Smoothness::C2);
    let (dom, sch) = (domain.clone(), *scheme);
    ScalarField::new(smooth, move |p| {
        let mut acc = T::zero();
        for (a, f) in row.iter().enumerate() {
            acc += fd_partial(&|x: &[T]| f.eval(x), a, p, &dom, &sch);
        }
        acc
    })
}

/// The exterior jet `𝔡τ`, characterised by `(𝔡τ)∘j¹v = d(τ∘v)`.
pub fn exterior_jet<T: Scalar>(
    tau: &TractionStressDensity<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> Result<VariationalStressDensity<T>> {
    check_fiber("traction base", domain.dim(), tau.base_dim)?;
    require("traction stress", &tau.tau, Smoothness::C1)?;
    check_scheme(domain, scheme)?;
    let d = tau.base_dim;
    let lower = (0..tau.fiber_dim)
        .map(|i| divergence_field(tau.tau[i * d..(i + 1) * d].to_vec(), domain, scheme))
        .collect();
    Ok(VariationalStressDensity {
        base_dim: d,
        fiber_dim: tau.fiber_dim,
        lower,
        mixed: tau.tau.clone(),
    })
}

/// `div s = (∂_α s_i^α − s_i) dx^i ⊗ dX`.
pub fn divergence<T: Scalar>(
    s: &VariationalStressDensity<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> Result<BodyForceDensity<T>> {
    check_fiber("stress base", domain.dim(), s.base_dim)?;
    require("mixed stress block", &s.mixed, Smoothness::C1)?;
    check_scheme(domain, scheme)?;
    let d = s.base_dim;
    let components = (0..s.fiber_dim)
        .map(|i| {
            let div = divergence_field(s.mixed[i * d..(i + 1) * d].to_vec(), domain, scheme);
            let lower = s.lower[i].clone();
            let smooth = div.smoothness().min(lower.smoothness());
            ScalarField::new(smooth, move |p| div.eval(p) - lower.eval(p))
        })
        .collect();
    BodyForceDensity::new(components)
}

/// Restriction of `τ` to a boundary face. Only the component along the face
/// normal survives, and the induced orientation sign is folded in so the
/// result integrates against the outward face measure.
pub fn cauchy_boundary<T: Scalar>(
    tau: &TractionStressDensity<T>,
    face: BoundaryFace,
    domain: &ChartDomain<T>,
) -> Result<FaceTraction<T>> {
    domain.check_face(face)?;
    if face.axis >= tau.base_dim {
        return Err(Error::AxisOutOfRange {
            axis: face.axis,
            dim: tau.base_dim,
        });
    }
    let sign: T = face.induced_sign();
    let components = (0..tau.fiber_dim)
        .map(|i| {
            let t = tau.component(i, face.axis);
            if sign > T::zero() {
                t.clone()
            } else {
                let t = t.clone();
                ScalarField::new(t.smoothness(), move |p| -t.eval(p))
            }
        })
        .collect();
    FaceTraction::new(face, components)
}

/// `sup_p |d(τ∘v) − (𝔡τ)∘j¹v|` over the probes, the left side by
/// differencing the (d−1)-form `τ∘v` directly.
pub fn exterior_jet_residual<T: Scalar>(
    tau: &TractionStressDensity<T>,
    v: &VelocityField<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
    grid: &ProbeGrid<T>,
) -> Result<T> {
    let omega = tau.apply(v)?;
    let direct = divergence_field(omega, domain, scheme);
    let s = exterior_jet(tau, domain, scheme)?;
    let eta = jet_prolong_velocity(v, domain, scheme)?;
    check_pairing(&s, &eta)?;
    Ok(grid.sup(|p| (direct.eval(p) - pair_at(&s, &eta, p)).abs()))
}

/// `sup_p |s∘j¹v − d((P∘s)∘v) + (div s)∘v|` over the probes.
pub fn divergence_residual<T: Scalar>(
    s: &VariationalStressDensity<T>,
    v: &VelocityField<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
    grid: &ProbeGrid<T>,
) -> Result<T> {
    let b = divergence(s, domain, scheme)?;
    let flux = divergence_field(traction_extract(s).apply(v)?, domain, scheme);
    let eta = jet_prolong_velocity(v, domain, scheme)?;
    check_pairing(s, &eta)?;
    Ok(grid.sup(|p| {
        let bv: T = b.eval(p).iter().zip(v.eval(p)).map(|(b, w)| *b * w).sum();
        (pair_at(s, &eta, p) - flux.eval(p) + bv).abs()
    }))
}
