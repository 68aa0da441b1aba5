//! Continuous forces given by body and surface densities, their virtual
//! power, and the checks tying forces to stresses: strong-form equilibrium
//! residuals, the weak/strong (integration by parts) balance and
//! equilibration against symmetry generators.

use crate::chart::{
    integrate_face_fn, integrate_fn, BoundaryFace, ChartDomain, FdScheme, ProbeGrid,
    QuadratureRule, ScalarField,
};
use crate::error::Result;
use crate::jet::{check_fiber, Configuration, FiberSpec, VelocityField};
use crate::scalar::Scalar;
use crate::stress::{
    cauchy_boundary, divergence, traction_extract, virtual_power_of_stress,
    VariationalStressDensity,
};

/// `b = b_i dx^i ⊗ dX` along a configuration.
#[derive(Clone, Debug)]
pub struct BodyForceDensity<T> {
    components: Vec<ScalarField<T>>,
}

impl<T: Scalar> BodyForceDensity<T> {
    pub fn new(components: Vec<ScalarField<T>>) -> Result<Self> {
        FiberSpec::new(components.len())?;
        Ok(Self { components })
    }

    pub fn zero(fiber_dim: usize) -> Self {
        Self {
            components: vec![ScalarField::zero(); fiber_dim],
        }
    }

    pub fn constant(values: &[T]) -> Self {
        Self {
            components: values.iter().map(|&c| ScalarField::constant(c)).collect(),
        }
    }

    pub fn fiber_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ScalarField<T>] {
        &self.components
    }

    pub fn eval(&self, p: &[T]) -> Vec<T> {
        self.components.iter().map(|c| c.eval(p)).collect()
    }

    pub fn negated(&self) -> Self {
        Self {
            components: self.components.iter().map(|c| c.scaled(-T::one())).collect(),
        }
    }
}

/// Surface density on one face, the coefficient of the outward-oriented
/// face measure (the induced sign of `∂_axis ⌟ dX` already folded in).
#[derive(Clone, Debug)]
pub struct FaceTraction<T> {
    face: BoundaryFace,
    components: Vec<ScalarField<T>>,
}

impl<T: Scalar> FaceTraction<T> {
    pub fn new(face: BoundaryFace, components: Vec<ScalarField<T>>) -> Result<Self> {
        FiberSpec::new(components.len())?;
        Ok(Self { face, components })
    }

    pub fn face(&self) -> BoundaryFace {
        self.face
    }

    pub fn components(&self) -> &[ScalarField<T>] {
        &self.components
    }

    pub fn eval(&self, p: &[T]) -> Vec<T> {
        self.components.iter().map(|c| c.eval(p)).collect()
    }
}

/// Surface force density: one [`FaceTraction`] per loaded face. Faces not
/// listed are traction free.
#[derive(Clone, Debug, Default)]
pub struct SurfaceForceDensity<T> {
    faces: Vec<FaceTraction<T>>,
}

impl<T: Scalar> SurfaceForceDensity<T> {
    pub fn new(faces: Vec<FaceTraction<T>>) -> Self {
        Self { faces }
    }

    pub fn none() -> Self {
        Self { faces: Vec::new() }
    }

    pub fn faces(&self) -> &[FaceTraction<T>] {
        &self.faces
    }

    pub fn on(&self, face: BoundaryFace) -> Option<&FaceTraction<T>> {
        self.faces.iter().find(|t| t.face == face)
    }
}

/// A continuous force `f(v) = ∫ b∘v + ∫_∂ t∘v`.
#[derive(Clone, Debug)]
pub struct ForceFunctional<T> {
    pub body: BodyForceDensity<T>,
    pub surface: SurfaceForceDensity<T>,
}

impl<T: Scalar> ForceFunctional<T> {
    pub fn new(body: BodyForceDensity<T>, surface: SurfaceForceDensity<T>) -> Self {
        Self { body, surface }
    }

    pub fn zero(fiber_dim: usize) -> Self {
        Self::new(BodyForceDensity::zero(fiber_dim), SurfaceForceDensity::none())
    }

    pub fn fiber_dim(&self) -> usize {
        self.body.fiber_dim()
    }
}

/// A velocity field generated by a symmetry at the current configuration.
#[derive(Clone, Debug)]
pub struct GeneratorField<T> {
    pub label: String,
    pub generator: VelocityField<T>,
}

impl<T: Scalar> GeneratorField<T> {
    /// Rigid translation along fiber direction `i`.
    pub fn translation(fiber_dim: usize, i: usize) -> Self {
        let components = (0..fiber_dim)
            .map(|k| ScalarField::constant(if k == i { T::one() } else { T::zero() }))
            .collect();
        Self {
            label: format!("translation[{i}]"),
            generator: VelocityField::new(components).expect("fiber_dim > 0"),
        }
    }

    /// Infinitesimal rotation in the `(i, j)` plane of the fiber, `v = A·κ`
    /// with `A_ij = 1`, `A_ji = −1`.
    pub fn rotation(kappa: &Configuration<T>, i: usize, j: usize) -> Self {
        let m = kappa.fiber_dim();
        let comps = kappa.components();
        let components = (0..m)
            .map(|k| {
                if k == i {
                    comps[j].clone()
                } else if k == j {
                    comps[i].scaled(-T::one())
                } else {
                    ScalarField::zero()
                }
            })
            .collect();
        Self {
            label: format!("rotation[{i},{j}]"),
            generator: VelocityField::new(components).expect("fiber_dim > 0"),
        }
    }

    /// All translations of an `m`-dimensional fiber.
    pub fn translations(fiber_dim: usize) -> Vec<Self> {
        (0..fiber_dim).map(|i| Self::translation(fiber_dim, i)).collect()
    }
}

fn dot_fields<T: Scalar>(a: &[ScalarField<T>], b: &[ScalarField<T>], p: &[T]) -> T {
    let mut acc = T::zero();
    for (f, g) in a.iter().zip(b) {
        acc += f.eval(p) * g.eval(p);
    }
    acc
}

/// `f(v) = ∫ b_i v^i dX + Σ_faces ∫ t_i v^i`.
pub fn virtual_power_of_force<T: Scalar>(
    f: &ForceFunctional<T>,
    v: &VelocityField<T>,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    check_fiber("velocity", f.fiber_dim(), v.fiber_dim())?;
    let body = f.body.components();
    let vel = v.components();
    let mut total = integrate_fn(&|p: &[T]| dot_fields(body, vel, p), domain, rule);
    for t in f.surface.faces() {
        domain.check_face(t.face)?;
        check_fiber("surface force", v.fiber_dim(), t.components.len())?;
        let comps = t.components();
        total += integrate_face_fn(&|p: &[T]| dot_fields(comps, vel, p), t.face, domain, rule);
    }
    Ok(total)
}

/// The force a stress balances: `b = −div s`, `t = 𝓒(P∘s)` on every face.
pub fn equilibrating_force<T: Scalar>(
    s: &VariationalStressDensity<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> Result<ForceFunctional<T>> {
    let body = divergence(s, domain, scheme)?.negated();
    let tau = traction_extract(s);
    let faces = domain
        .boundary_faces()
        .into_iter()
        .map(|face| cauchy_boundary(&tau, face, domain))
        .collect::<Result<Vec<_>>>()?;
    Ok(ForceFunctional::new(body, SurfaceForceDensity::new(faces)))
}

/// Sup-norm residuals of a strong-form boundary value problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquilibriumResiduals<T> {
    pub interior: T,
    pub boundary: T,
}

/// `sup ‖div s + b‖∞` on the interior probe lattice and
/// `sup ‖t − 𝓒(P∘s)‖∞` on every face lattice.
pub fn equilibrium_residuals<T: Scalar>(
    s: &VariationalStressDensity<T>,
    f: &ForceFunctional<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
    probes_per_axis: usize,
) -> Result<EquilibriumResiduals<T>> {
    check_fiber("force", s.fiber_dim(), f.fiber_dim())?;
    let div = divergence(s, domain, scheme)?;
    let grid = ProbeGrid::interior(domain, probes_per_axis, scheme);
    let interior = grid.sup(|p| {
        div.components()
            .iter()
            .zip(f.body.components())
            .fold(T::zero(), |m, (d, b)| m.max((d.eval(p) + b.eval(p)).abs()))
    });
    let tau = traction_extract(s);
    let mut boundary = T::zero();
    for face in domain.boundary_faces() {
        let cauchy = cauchy_boundary(&tau, face, domain)?;
        let given = f.surface.on(face);
        let face_grid = ProbeGrid::on_face(domain, face, probes_per_axis, scheme);
        boundary = boundary.max(face_grid.sup(|p| {
            let c = cauchy.eval(p);
            let t = given.map(|t| t.eval(p));
            c.iter().enumerate().fold(T::zero(), |m, (i, &ci)| {
                let ti = t.as_ref().map_or(T::zero(), |t| t[i]);
                m.max((ti - ci).abs())
            })
        }));
    }
    Ok(EquilibriumResiduals { interior, boundary })
}

/// The two sides of `∫ s∘j¹v = −∫ (div s)∘v + ∫_∂ 𝓒(P∘s)∘v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeakStrongBalance<T> {
    pub stress_power: T,
    pub divergence_form: T,
}

impl<T: Scalar> WeakStrongBalance<T> {
    pub fn residual(&self) -> T {
        (self.stress_power - self.divergence_form).abs()
    }
}

pub fn weak_strong_balance<T: Scalar>(
    s: &VariationalStressDensity<T>,
    v: &VelocityField<T>,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
    scheme: &FdScheme<T>,
) -> Result<WeakStrongBalance<T>> {
    let stress_power = virtual_power_of_stress(s, v, domain, rule, scheme)?;
    let div = divergence(s, domain, scheme)?;
    let vel = v.components();
    let mut divergence_form =
        -integrate_fn(&|p: &[T]| dot_fields(div.components(), vel, p), domain, rule);
    let tau = traction_extract(s);
    for face in domain.boundary_faces() {
        let t = cauchy_boundary(&tau, face, domain)?;
        let comps = t.components();
        divergence_form += integrate_face_fn(&|p: &[T]| dot_fields(comps, vel, p), face, domain, rule);
    }
    Ok(WeakStrongBalance {
        stress_power,
        divergence_form,
    })
}

/// `|∫ s∘j¹v − (−∫ (div s)∘v + ∫_∂ 𝓒(P∘s)∘v)|`.
pub fn weak_strong_consistency<T: Scalar>(
    s: &VariationalStressDensity<T>,
    v: &VelocityField<T>,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
    scheme: &FdScheme<T>,
) -> Result<T> {
    Ok(weak_strong_balance(s, v, domain, rule, scheme)?.residual())
}

/// `|f(v_γ)|` for each generator.
pub fn equilibrated_force_residual<T: Scalar>(
    f: &ForceFunctional<T>,
    generators: &[GeneratorField<T>],
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
) -> Result<Vec<T>> {
    generators
        .iter()
        .map(|g| virtual_power_of_force(f, &g.generator, domain, rule).map(|x| x.abs()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Smoothness;
    use crate::fields::{polynomial_bump, Polynomial};
    use crate::stress::{exterior_jet, TractionStressDensity};

    fn c(v: f64) -> ScalarField<f64> {
        ScalarField::constant(v)
    }

    fn dense(d: usize, seed: usize) -> ScalarField<f64> {
        let n = 4usize.pow(d as u32);
        Polynomial::dense(d, 3, (0..n).map(|k| (((k + 3 * seed) * 37 % 23) as f64 - 11.0) / 11.0))
            .to_field()
    }

    #[test]
    fn force_power_examples() {
        let dom = ChartDomain::unit_box(1).unwrap();
        let rule = QuadratureRule::default();
        let v = VelocityField::new(vec![ScalarField::coordinate(0)]).unwrap();
        let z = ForceFunctional::zero(1);
        assert_eq!(virtual_power_of_force(&z, &v, &dom, &rule).unwrap(), 0.0);

        let b = ForceFunctional::new(BodyForceDensity::constant(&[1.0]), SurfaceForceDensity::none());
        assert!(f64::abs(virtual_power_of_force(&b, &v, &dom, &rule).unwrap() - 0.5) < 1e-12);

        let t = FaceTraction::new(BoundaryFace::upper(0), vec![c(1.0)]).unwrap();
        let f = ForceFunctional::new(BodyForceDensity::zero(1), SurfaceForceDensity::new(vec![t]));
        let one = VelocityField::new(vec![c(1.0)]).unwrap();
        assert_eq!(virtual_power_of_force(&f, &one, &dom, &rule).unwrap(), 1.0);
    }

    #[test]
    fn force_power_is_linear() {
        let dom = ChartDomain::unit_box(2).unwrap();
        let rule = QuadratureRule::default();
        let f = ForceFunctional::new(
            BodyForceDensity::new(vec![dense(2, 1)]).unwrap(),
            SurfaceForceDensity::new(vec![FaceTraction::new(BoundaryFace::lower(0), vec![dense(2, 2)]).unwrap()]),
        );
        let v = VelocityField::new(vec![dense(2, 3)]).unwrap();
        let w = VelocityField::new(vec![dense(2, 4)]).unwrap();
        let lhs = virtual_power_of_force(&f, &v.combine(2.0, &w, -3.0).unwrap(), &dom, &rule).unwrap();
        let rhs = 2.0 * virtual_power_of_force(&f, &v, &dom, &rule).unwrap()
            - 3.0 * virtual_power_of_force(&f, &w, &dom, &rule).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn equilibrium_examples() {
        let dom = ChartDomain::unit_box(2).unwrap();
        let sch = FdScheme::default();
        let zero = VariationalStressDensity::zero(2, 1);
        let r = equilibrium_residuals(&zero, &ForceFunctional::zero(1), &dom, &sch, 17).unwrap();
        assert_eq!((r.interior, r.boundary), (0.0, 0.0));
        let f = ForceFunctional::new(BodyForceDensity::constant(&[1.0]), SurfaceForceDensity::none());
        let r = equilibrium_residuals(&zero, &f, &dom, &sch, 17).unwrap();
        assert_eq!(r.interior, 1.0);
    }

    #[test]
    fn manufactured_equilibrium_has_small_residuals() {
        let dom = ChartDomain::unit_box(2).unwrap();
        let sch = FdScheme::default();
        let mixed = vec![dense(2, 5), dense(2, 6)];
        let tau = TractionStressDensity::new(2, 1, mixed).unwrap();
        // s_i = ∂_α s_i^α makes div s = 0
        let s = exterior_jet(&tau, &dom, &sch).unwrap();
        let f = equilibrating_force(&s, &dom, &sch).unwrap();
        let f = ForceFunctional::new(BodyForceDensity::zero(1), f.surface);
        let r = equilibrium_residuals(&s, &f, &dom, &sch, 17).unwrap();
        assert!(r.interior <= 1e-6 && r.boundary <= 1e-6, "{r:?}");
    }

    #[test]
    fn weak_strong_examples() {
        let dom = ChartDomain::unit_box(2).unwrap();
        let (rule, sch) = (QuadratureRule::default(), FdScheme::default());
        let s = VariationalStressDensity::new(
            2,
            2,
            vec![dense(2, 1), dense(2, 2)],
            (3..7).map(|k| dense(2, k)).collect(),
        )
        .unwrap();
        let v = VelocityField::new(vec![dense(2, 8), dense(2, 9)]).unwrap();
        assert!(weak_strong_consistency(&s, &v, &dom, &rule, &sch).unwrap() <= 1e-6);
        let z = VariationalStressDensity::zero(2, 2);
        assert_eq!(weak_strong_consistency(&z, &v, &dom, &rule, &sch).unwrap(), 0.0);
    }

    #[test]
    fn null_stress_sides_vanish() {
        let dom = ChartDomain::unit_box(2).unwrap();
        let rule = QuadratureRule::composite(8, 4).unwrap();
        let sch = FdScheme::default();
        let bump = polynomial_bump(vec![(0.25, 0.75), (0.25, 0.5)], 1.0);
        let tau = TractionStressDensity::new(2, 1, vec![bump.clone(), bump.scaled(0.7)]).unwrap();
        let s = exterior_jet(&tau, &dom, &sch).unwrap();
        let v = VelocityField::new(vec![dense(2, 3)]).unwrap();
        let b = weak_strong_balance(&s, &v, &dom, &rule, &sch).unwrap();
        assert!(b.stress_power.abs() <= 1e-8, "{b:?}");
        assert!(b.divergence_form.abs() <= 1e-8, "{b:?}");
    }

    #[test]
    fn generators() {
        let dom = ChartDomain::unit_box(2).unwrap();
        let rule = QuadratureRule::default();
        let f = ForceFunctional::new(BodyForceDensity::constant(&[1.0, 0.0]), SurfaceForceDensity::none());
        let r = equilibrated_force_residual(&f, &GeneratorField::translations(2), &dom, &rule).unwrap();
        assert!(f64::abs(r[0] - 1.0) < 1e-14);
        assert_eq!(r[1], 0.0);
        let z = equilibrated_force_residual(&ForceFunctional::zero(2), &GeneratorField::translations(2), &dom, &rule)
            .unwrap();
        assert_eq!(z, vec![0.0, 0.0]);
    }

    #[test]
    fn translations_equilibrated_for_pure_mixed_stress() {
        let dom = ChartDomain::unit_box(2).unwrap();
        let (rule, sch) = (QuadratureRule::default(), FdScheme::default());
        let s = VariationalStressDensity::new(
            2,
            2,
            vec![c(0.0), c(0.0)],
            (10..14).map(|k| dense(2, k)).collect(),
        )
        .unwrap();
        let f = equilibrating_force(&s, &dom, &sch).unwrap();
        for r in equilibrated_force_residual(&f, &GeneratorField::translations(2), &dom, &rule).unwrap() {
            assert!(r <= 1e-8, "{r}");
        }
    }

    #[test]
    fn rotations_equilibrated_for_symmetric_stress() {
        // s_i^α = ∂_α κ^i gives s_i^α ∂_α κ^j symmetric in (i, j)
        let dom = ChartDomain::unit_box(2).unwrap();
        let (rule, sch) = (QuadratureRule::default(), FdScheme::default());
        let p0 = Polynomial::dense(2, 2, (0..9).map(|k| (k as f64 - 4.0) / 4.0));
        let p1 = Polynomial::dense(2, 2, (0..9).map(|k| ((k * 5 % 9) as f64 - 4.0) / 5.0));
        let kappa = Configuration::new(vec![p0.to_field(), p1.to_field()]).unwrap();
        let mixed = vec![
            p0.derivative(0).to_field(),
            p0.derivative(1).to_field(),
            p1.derivative(0).to_field(),
            p1.derivative(1).to_field(),
        ];
        let s = VariationalStressDensity::new(2, 2, vec![c(0.0), c(0.0)], mixed).unwrap();
        let f = equilibrating_force(&s, &dom, &sch).unwrap();
        let rot = GeneratorField::rotation(&kappa, 0, 1);
        let r = equilibrated_force_residual(&f, &[rot], &dom, &rule).unwrap();
        assert!(r[0] <= 1e-8, "{r:?}");
        assert_eq!(
            GeneratorField::<f64>::rotation(&kappa, 0, 1).generator.smoothness(),
            Smoothness::C2
        );
    }
}
