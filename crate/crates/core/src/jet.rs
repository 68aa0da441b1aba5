//! Configurations, velocity fields and their first jets in adapted
//! coordinates `(X^α, x^i, x'^i_α)`.
//!
//! Fibers are linear (`x ∈ R^m`). A [`JetSection`] stores its derivative
//! block explicitly, so incompatible (non-holonomic) deformation jets are
//! representable; [`holonomy_residual`] measures how far one is from being
//! the prolongation of its own value part.

use std::fmt;
use std::sync::Arc;

use crate::chart::{
    check_scheme, fd_partial, require, ChartDomain, FdScheme, ProbeGrid, ScalarField, Smoothness,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberSpec {
    fiber_dim: usize,
}

impl FiberSpec {
    pub fn new(fiber_dim: usize) -> Result<Self> {
        if fiber_dim == 0 {
            return Err(Error::ShapeMismatch {
                what: "fiber dimension",
                expected: 1,
                found: 0,
            });
        }
        Ok(Self { fiber_dim })
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }
}

/// Dense `m × d` block indexed by (fiber index `i`, base index `α`).
#[derive(Clone, Debug, PartialEq)]
pub struct MixedBlock<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> MixedBlock<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for a in 0..cols {
                data.push(f(i, a));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                what: "mixed block",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, alpha: usize) -> T {
        self.data[i * self.cols + alpha]
    }

    pub fn set(&mut self, i: usize, alpha: usize, v: T) {
        self.data[i * self.cols + alpha] = v;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }
}

/// Value and derivative block of a jet (or velocity jet) at one base point.
#[derive(Clone, Debug, PartialEq)]
pub struct JetValue<T> {
    pub value: Vec<T>,
    pub gradient: MixedBlock<T>,
}

/// A point `(X, x, x')` of the first jet bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPoint<T> {
    pub base: Vec<T>,
    pub value: Vec<T>,
    pub gradient: MixedBlock<T>,
}

impl<T: Scalar> JetPoint<T> {
    pub fn base_dim(&self) -> usize {
        self.base.len()
    }

    pub fn fiber_dim(&self) -> usize {
        self.value.len()
    }
}

fn smoothness_of<T: Scalar>(fields: &[ScalarField<T>]) -> Smoothness {
    fields
        .iter()
        .map(|f| f.smoothness())
        .min()
        .unwrap_or(Smoothness::C2)
}

/// A section `κ` in adapted coordinates: `m` component fields `x^i ∘ κ`.
#[derive(Clone, Debug)]
pub struct Configuration<T> {
    components: Vec<ScalarField<T>>,
}

impl<T: Scalar> Configuration<T> {
    pub fn new(components: Vec<ScalarField<T>>) -> Result<Self> {
        FiberSpec::new(components.len())?;
        Ok(Self { components })
    }

    pub fn fiber_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ScalarField<T>] {
        &self.components
    }

    pub fn smoothness(&self) -> Smoothness {
        smoothness_of(&self.components)
    }

    pub fn eval(&self, p: &[T]) -> Vec<T> {
        self.components.iter().map(|c| c.eval(p)).collect()
    }

    /// `κ + t·v`, the straight-line variation in the linear fiber.
    pub fn displaced(&self, v: &VelocityField<T>, t: T) -> Result<Self> {
        check_fiber("velocity", self.fiber_dim(), v.fiber_dim())?;
        let components = self
            .components
            .iter()
            .zip(v.components())
            .map(|(k, w)| ScalarField::linear_combination(T::one(), k, t, w))
            .collect();
        Ok(Self { components })
    }
}

/// A generalized velocity `v = v^i ∂_i` along a configuration.
#[derive(Clone, Debug)]
pub struct VelocityField<T> {
    components: Vec<ScalarField<T>>,
}

impl<T: Scalar> VelocityField<T> {
    pub fn new(components: Vec<ScalarField<T>>) -> Result<Self> {
        FiberSpec::new(components.len())?;
        Ok(Self { components })
    }

    pub fn zero(fiber_dim: usize) -> Self {
        Self {
            components: vec![ScalarField::zero(); fiber_dim],
        }
    }

    pub fn fiber_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ScalarField<T>] {
        &self.components
    }

    pub fn smoothness(&self) -> Smoothness {
        smoothness_of(&self.components)
    }

    pub fn eval(&self, p: &[T]) -> Vec<T> {
        self.components.iter().map(|c| c.eval(p)).collect()
    }

    /// `a·self + b·other`, componentwise.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Result<Self> {
        check_fiber("velocity", self.fiber_dim(), other.fiber_dim())?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| ScalarField::linear_combination(a, f, b, g))
            .collect();
        Ok(Self { components })
    }
}

pub(crate) fn check_fiber(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            what,
            expected,
            found,
        })
    }
}

type JetFn<T> = dyn Fn(&[T]) -> JetValue<T> + Send + Sync;

/// A deformation jet field `ξ: X ↦ (x, x')`.
#[derive(Clone)]
pub struct JetSection<T> {
    base_dim: usize,
    fiber_dim: usize,
    holonomic: bool,
    eval: Arc<JetFn<T>>,
}

impl<T> fmt::Debug for JetSection<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetSection")
            .field("base_dim", &self.base_dim)
            .field("fiber_dim", &self.fiber_dim)
            .field("holonomic", &self.holonomic)
            .finish_non_exhaustive()
    }
}

impl<T: Scalar> JetSection<T> {
    /// A jet field given directly. `holonomic` is a claim that
    /// [`holonomy_residual`] can test.
    pub fn new(
        base_dim: usize,
        fiber_dim: usize,
        holonomic: bool,
        eval: impl Fn(&[T]) -> JetValue<T> + Send + Sync + 'static,
    ) -> Self {
        Self {
            base_dim,
            fiber_dim,
            holonomic,
            eval: Arc::new(eval),
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn is_holonomic(&self) -> bool {
        self.holonomic
    }

    pub fn eval(&self, p: &[T]) -> JetValue<T> {
        (self.eval)(p)
    }

    pub fn point(&self, p: &[T]) -> JetPoint<T> {
        let JetValue { value, gradient } = self.eval(p);
        JetPoint {
            base: p.to_vec(),
            value,
            gradient,
        }
    }
}

/// A velocity jet field `η: X ↦ (ẋ, ẋ')`.
#[derive(Clone)]
pub struct VelocityJet<T> {
    base_dim: usize,
    fiber_dim: usize,
    eval: Arc<JetFn<T>>,
}

impl<T> fmt::Debug for VelocityJet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VelocityJet")
            .field("base_dim", &self.base_dim)
            .field("fiber_dim", &self.fiber_dim)
            .finish_non_exhaustive()
    }
}

impl<T: Scalar> VelocityJet<T> {
    pub fn new(
        base_dim: usize,
        fiber_dim: usize,
        eval: impl Fn(&[T]) -> JetValue<T> + Send + Sync + 'static,
    ) -> Self {
        Self {
            base_dim,
            fiber_dim,
            eval: Arc::new(eval),
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn eval(&self, p: &[T]) -> JetValue<T> {
        (self.eval)(p)
    }
}

fn first_jet<T: Scalar>(
    components: &[ScalarField<T>],
    p: &[T],
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> JetValue<T> {
    let value = components.iter().map(|c| c.eval(p)).collect();
    let gradient = MixedBlock::from_fn(components.len(), domain.dim(), |i, a| {
        fd_partial(&|x: &[T]| components[i].eval(x), a, p, domain, scheme)
    });
    JetValue { value, gradient }
}

/// `j¹κ`: value `κ(X)` and derivative block `∂_α κ^i(X)`.
pub fn jet_prolong_config<T: Scalar>(
    kappa: &Configuration<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> Result<JetSection<T>> {
    require("configuration", kappa.components(), Smoothness::C1)?;
    check_scheme(domain, scheme)?;
    let (comps, dom, sch) = (kappa.components.clone(), domain.clone(), *scheme);
    Ok(JetSection::new(
        domain.dim(),
        kappa.fiber_dim(),
        true,
        move |p| first_jet(&comps, p, &dom, &sch),
    ))
}

/// `j¹v = v^i ∂_i + (∂_α v^i) ∂_i^α`.
pub fn jet_prolong_velocity<T: Scalar>(
    v: &VelocityField<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> Result<VelocityJet<T>> {
    require("velocity", v.components(), Smoothness::C1)?;
    check_scheme(domain, scheme)?;
    let (comps, dom, sch) = (v.components.clone(), domain.clone(), *scheme);
    Ok(VelocityJet::new(domain.dim(), v.fiber_dim(), move |p| {
        first_jet(&comps, p, &dom, &sch)
    }))
}

fn record_len(d: usize, m: usize) -> usize {
    d + 2 * m + 2 * m * d
}

/// Local representative of the canonical isomorphism `VJ¹Y ≅ J¹VY`.
///
/// Input layout `(X, x, x', ẋ, ẋ')`, output `(X, x, ẋ, x', ẋ')`; the
/// derivative blocks are `m × d` row-major.
pub fn iso_k<T: Copy>(d: usize, m: usize, coords: &[T]) -> Result<Vec<T>> {
    swap_middle(d, m, coords, m * d, m)
}

/// Inverse of [`iso_k`].
pub fn iso_k_inv<T: Copy>(d: usize, m: usize, coords: &[T]) -> Result<Vec<T>> {
    swap_middle(d, m, coords, m, m * d)
}

fn swap_middle<T: Copy>(d: usize, m: usize, c: &[T], first: usize, second: usize) -> Result<Vec<T>> {
    let n = record_len(d, m);
    if c.len() != n {
        return Err(Error::ShapeMismatch {
            what: "jet coordinate record",
            expected: n,
            found: c.len(),
        });
    }
    let head = d + m;
    let mid = head + first;
    let tail = mid + second;
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&c[..head]);
    out.extend_from_slice(&c[mid..tail]);
    out.extend_from_slice(&c[head..mid]);
    out.extend_from_slice(&c[tail..]);
    Ok(out)
}

/// `sup_grid max_{i,α} |x'^i_α(X) − ∂_α x^i(X)|`.
pub fn holonomy_residual<T: Scalar>(
    xi: &JetSection<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
    grid: &ProbeGrid<T>,
) -> Result<T> {
    check_scheme(domain, scheme)?;
    check_fiber("jet base dimension", domain.dim(), xi.base_dim())?;
    Ok(grid.sup(|p| {
        let jet = xi.eval(p);
        let mut worst = T::zero();
        for i in 0..xi.fiber_dim() {
            for a in 0..domain.dim() {
                let dx = fd_partial(&|x: &[T]| xi.eval(x).value[i], a, p, domain, scheme);
                worst = worst.max((jet.gradient.get(i, a) - dx).abs());
            }
        }
        worst
    }))
}
