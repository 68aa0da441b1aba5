//! Numerical calculus for stress theory on first jet bundles.
//!
//! Everything lives in one adapted chart over an axis-aligned box. Fields
//! are closures tagged with a smoothness class; derivatives are finite
//! differences and integrals are tensor-product Gauss–Legendre rules. The
//! core is generic over the scalar type; `f64` aliases are exported at the
//! crate root.

pub mod chart;
pub mod constitutive;
mod error;
pub mod fields;
pub mod forces;
pub mod forms;
pub mod jet;
mod scalar;
pub mod stress;

pub use error::{Error, Result};
pub use scalar::{max_abs, pairwise_sum, Scalar};

pub use chart::{
    central_difference, derivative_field, integrate_boundary, integrate_face, integrate_volume,
    partial_derivative, stokes_balance, stokes_residual, AxisKind, BasePoint, BoundaryFace,
    ChartDomain, FaceSide, FdOrder, FdScheme, ProbeGrid, QuadratureRule, ScalarField, Smoothness,
    StokesBalance,
};
pub use constitutive::{
    bvp_residual, constitutive_from_lagrangian, energy_variation, energy_variation_residual,
    internal_energy, jet_fn, loading_from_potential, pullback_constitutive, total_energy, total_fn,
    BodyLoadingDensity, ConstitutiveDensity, Discretization, EnergyVariation, JetFunction,
    LagrangianDensity, PotentialDensities, SurfaceLoadingDensity, TotalFunction,
};
pub use fields::{exponent_tuples, polynomial_bump, Monomial, PlaneWave, Polynomial};
pub use forces::{
    equilibrated_force_residual, equilibrating_force, equilibrium_residuals,
    virtual_power_of_force, weak_strong_balance, weak_strong_consistency, BodyForceDensity,
    EquilibriumResiduals, FaceTraction, ForceFunctional, GeneratorField, SurfaceForceDensity,
    WeakStrongBalance,
};
pub use forms::{
    exterior_derivative, hodge_star, maxwell_vacuum_check, multi_indices, permutation_sign,
    pform_virtual_power, wedge, FlatMetric, MaxwellResiduals, PForm,
};
pub use jet::{
    holonomy_residual, iso_k, iso_k_inv, jet_prolong_config, jet_prolong_velocity, Configuration,
    FiberSpec, JetPoint, JetSection, JetValue, MixedBlock, VelocityField, VelocityJet,
};
pub use stress::{
    cauchy_boundary, divergence, divergence_residual, exterior_jet, exterior_jet_residual, stress_pairing, traction_extract,
    virtual_power_of_stress, TractionStressDensity, VariationalStressDensity,
};

pub type ChartDomainF64 = ChartDomain<f64>;
pub type ScalarFieldF64 = ScalarField<f64>;
pub type FdSchemeF64 = FdScheme<f64>;
pub type QuadratureRuleF64 = QuadratureRule<f64>;
pub type ConfigurationF64 = Configuration<f64>;
pub type VelocityFieldF64 = VelocityField<f64>;
pub type VariationalStressDensityF64 = VariationalStressDensity<f64>;
pub type TractionStressDensityF64 = TractionStressDensity<f64>;
pub type ForceFunctionalF64 = ForceFunctional<f64>;
pub type PFormF64 = PForm<f64>;
pub type DiscretizationF64 = Discretization<f64>;
