//! The adapted base chart: an axis-aligned box with per-axis boundary or
//! periodic behaviour, scalar fields over it, finite-difference partial
//! derivatives, tensor-product Gauss–Legendre quadrature on the interior and
//! on boundary faces, and the Stokes balance every integration-by-parts
//! identity in the crate leans on.
//!
//! Axes are numbered from zero. The volume element is
//! `dX = dX^0 ∧ … ∧ dX^{d-1}` with unit coefficient, and the boundary face
//! normal to axis `a` carries the measure `±(∂_a ⌟ dX)` with `+` on the upper
//! face and `-` on the lower one.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Smoothness {
    C0,
    C1,
    C2,
}

impl Smoothness {
    /// Smoothness left after one differentiation.
    pub fn derivative(self) -> Smoothness {
        match self {
            Smoothness::C2 => Smoothness::C1,
            _ => Smoothness::C0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxisKind {
    Boundary,
    Periodic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChartDomain<T> {
    bounds: Vec<(T, T)>,
    kinds: Vec<AxisKind>,
}

impl<T: Scalar> ChartDomain<T> {
    pub fn new(bounds: Vec<(T, T)>, kinds: Vec<AxisKind>) -> Result<Self> {
        if bounds.is_empty() || bounds.len() != kinds.len() {
            return Err(Error::InvalidChart);
        }
        for (axis, &(lo, hi)) in bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidInterval { axis });
            }
        }
        Ok(Self { bounds, kinds })
    }

    /// `[0,1]^d` with boundary faces on every axis.
    pub fn unit_box(dim: usize) -> Result<Self> {
        Self::new(
            vec![(T::zero(), T::one()); dim],
            vec![AxisKind::Boundary; dim],
        )
    }

    /// `[0,1]^d` with every axis periodic (a flat torus).
    pub fn unit_torus(dim: usize) -> Result<Self> {
        Self::new(
            vec![(T::zero(), T::one()); dim],
            vec![AxisKind::Periodic; dim],
        )
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self, axis: usize) -> (T, T) {
        self.bounds[axis]
    }

    pub fn kind(&self, axis: usize) -> AxisKind {
        self.kinds[axis]
    }

    pub fn extent(&self, axis: usize) -> T {
        let (lo, hi) = self.bounds[axis];
        hi - lo
    }

    pub fn volume(&self) -> T {
        (0..self.dim()).fold(T::one(), |v, a| v * self.extent(a))
    }

    pub fn check_axis(&self, axis: usize) -> Result<()> {
        if axis < self.dim() {
            Ok(())
        } else {
            Err(Error::AxisOutOfRange {
                axis,
                dim: self.dim(),
            })
        }
    }

    pub fn contains(&self, p: &[T]) -> bool {
        p.len() == self.dim()
            && p
                .iter()
                .zip(&self.bounds)
                .all(|(&x, &(lo, hi))| lo <= x && x <= hi)
    }

    /// Maps a coordinate on a periodic axis back into `[lo, hi)`.
    pub fn wrap(&self, axis: usize, x: T) -> T {
        if self.kinds[axis] != AxisKind::Periodic {
            return x;
        }
        let (lo, hi) = self.bounds[axis];
        if x >= lo && x < hi {
            return x;
        }
        let len = hi - lo;
        let mut r = (x - lo) % len;
        if r < T::zero() {
            r += len;
        }
        lo + r
    }

    /// All faces of the box, lower before upper, in axis order. Periodic axes
    /// contribute none.
    pub fn boundary_faces(&self) -> Vec<BoundaryFace> {
        (0..self.dim())
            .filter(|&a| self.kinds[a] == AxisKind::Boundary)
            .flat_map(|axis| {
                [FaceSide::Lower, FaceSide::Upper]
                    .into_iter()
                    .map(move |side| BoundaryFace { axis, side })
            })
            .collect()
    }

    pub fn check_face(&self, face: BoundaryFace) -> Result<()> {
        self.check_axis(face.axis)?;
        match self.kinds[face.axis] {
            AxisKind::Boundary => Ok(()),
            AxisKind::Periodic => Err(Error::PeriodicFace { axis: face.axis }),
        }
    }

    /// Coordinate of the hyperplane carrying `face`.
    pub fn face_coordinate(&self, face: BoundaryFace) -> T {
        let (lo, hi) = self.bounds[face.axis];
        match face.side {
            FaceSide::Lower => lo,
            FaceSide::Upper => hi,
        }
    }
}

/// A point of the chart, validated against its domain on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct BasePoint<T>(Vec<T>);

impl<T: Scalar> BasePoint<T> {
    pub fn new(domain: &ChartDomain<T>, coords: Vec<T>) -> Result<Self> {
        if coords.len() != domain.dim() {
            return Err(Error::ShapeMismatch {
                what: "base point",
                expected: domain.dim(),
                found: coords.len(),
            });
        }
        if !domain.contains(&coords) {
            return Err(Error::OutsideChart(
                coords.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
            ));
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }
}

impl<T> Deref for BasePoint<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceSide {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryFace {
    pub axis: usize,
    pub side: FaceSide,
}

impl BoundaryFace {
    pub fn lower(axis: usize) -> Self {
        Self {
            axis,
            side: FaceSide::Lower,
        }
    }

    pub fn upper(axis: usize) -> Self {
        Self {
            axis,
            side: FaceSide::Upper,
        }
    }

    /// Orientation of `∂_axis ⌟ dX` relative to the outward-oriented face.
    pub fn induced_sign<T: Scalar>(&self) -> T {
        match self.side {
            FaceSide::Lower => -T::one(),
            FaceSide::Upper => T::one(),
        }
    }
}

type FieldFn<T> = dyn Fn(&[T]) -> T + Send + Sync;

/// A real-valued coefficient field over the chart.
///
/// Evaluation must be pure. The smoothness tag is a promise checked by the
/// operators that differentiate the field.
#[derive(Clone)]
pub struct ScalarField<T> {
    eval: Arc<FieldFn<T>>,
    smoothness: Smoothness,
}

impl<T> fmt::Debug for ScalarField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("smoothness", &self.smoothness)
            .finish_non_exhaustive()
    }
}

impl<T: Scalar> ScalarField<T> {
    pub fn new(smoothness: Smoothness, f: impl Fn(&[T]) -> T + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            smoothness,
        }
    }

    pub fn constant(c: T) -> Self {
        Self::new(Smoothness::C2, move |_| c)
    }

    pub fn zero() -> Self {
        Self::constant(T::zero())
    }

    /// The coordinate function `X ↦ X^axis`.
    pub fn coordinate(axis: usize) -> Self {
        Self::new(Smoothness::C2, move |p| p[axis])
    }

    #[inline]
    pub fn eval(&self, p: &[T]) -> T {
        (self.eval)(p)
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn with_smoothness(mut self, smoothness: Smoothness) -> Self {
        self.smoothness = smoothness;
        self
    }

    pub fn scaled(&self, a: T) -> Self {
        let f = self.clone();
        Self::new(self.smoothness, move |p| a * f.eval(p))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let (f, g) = (self.clone(), other.clone());
        Self::new(self.smoothness.min(other.smoothness), move |p| {
            f.eval(p) + g.eval(p)
        })
    }

    pub fn times(&self, other: &Self) -> Self {
        let (f, g) = (self.clone(), other.clone());
        Self::new(self.smoothness.min(other.smoothness), move |p| {
            f.eval(p) * g.eval(p)
        })
    }

    /// `a·self + b·other`, evaluated as written (no reassociation).
    pub fn linear_combination(a: T, f: &Self, b: T, g: &Self) -> Self {
        let (f, g) = (f.clone(), g.clone());
        Self::new(f.smoothness.min(g.smoothness), move |p| {
            a * f.eval(p) + b * g.eval(p)
        })
    }
}

pub(crate) fn require<T: Scalar>(
    what: &'static str,
    fields: &[ScalarField<T>],
    required: Smoothness,
) -> Result<()> {
    match fields.iter().map(|f| f.smoothness()).min() {
        Some(found) if found < required => Err(Error::NotDifferentiable {
            what,
            required,
            found,
        }),
        _ => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FdOrder {
    Second,
    Fourth,
}

impl FdOrder {
    pub fn value(self) -> usize {
        match self {
            FdOrder::Second => 2,
            FdOrder::Fourth => 4,
        }
    }

    /// Half-width of the central stencil in steps.
    pub fn half_width(self) -> usize {
        self.value() / 2
    }
}

/// Finite-difference step and accuracy order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdScheme<T> {
    step: T,
    order: FdOrder,
}

impl<T: Scalar> FdScheme<T> {
    pub fn new(step: T, order: FdOrder) -> Result<Self> {
        if step.is_finite() && step > T::zero() {
            Ok(Self { step, order })
        } else {
            Err(Error::InvalidStep)
        }
    }

    pub fn step(&self) -> T {
        self.step
    }

    pub fn order(&self) -> FdOrder {
        self.order
    }

    /// Distance from a boundary face inside which central stencils no longer fit.
    pub fn margin(&self) -> T {
        self.step * T::from_usize_lossy(self.order.half_width())
    }

    fn check_fits(&self, domain: &ChartDomain<T>, axis: usize) -> Result<()> {
        let span = self.step * T::from_usize_lossy(self.order.value());
        let extent = domain.extent(axis);
        if span < extent {
            Ok(())
        } else {
            Err(Error::StepTooLarge {
                axis,
                span: span.to_f64().unwrap_or(f64::NAN),
                extent: extent.to_f64().unwrap_or(f64::NAN),
            })
        }
    }
}

impl<T: Scalar> Default for FdScheme<T> {
    fn default() -> Self {
        Self {
            step: T::lit(1e-3),
            order: FdOrder::Fourth,
        }
    }
}

/// Central difference of a function of one variable.
pub fn central_difference<T: Scalar>(mut g: impl FnMut(T) -> T, x: T, h: T, order: FdOrder) -> T {
    match order {
        FdOrder::Second => {
            let (m1, p1) = (g(x - h), g(x + h));
            (p1 - m1) / (h + h)
        }
        FdOrder::Fourth => {
            let h2 = h + h;
            let (m2, m1, p1, p2) = (g(x - h2), g(x - h), g(x + h), g(x + h2));
            ((m2 - p2) + T::lit(8.0) * (p1 - m1)) / (T::lit(12.0) * h)
        }
    }
}

/// One-sided difference of the same order; `h < 0` gives the backward form.
fn one_sided_difference<T: Scalar>(mut g: impl FnMut(T) -> T, x: T, h: T, order: FdOrder) -> T {
    match order {
        FdOrder::Second => {
            let (f0, f1, f2) = (g(x), g(x + h), g(x + h + h));
            (T::lit(-3.0) * f0 + T::lit(4.0) * f1 - f2) / (h + h)
        }
        FdOrder::Fourth => {
            let mut s = |k: f64| g(x + T::lit(k) * h);
            let (f0, f1, f2, f3, f4) = (s(0.0), s(1.0), s(2.0), s(3.0), s(4.0));
            (T::lit(-25.0) * f0 + T::lit(48.0) * f1 - T::lit(36.0) * f2 + T::lit(16.0) * f3
                - T::lit(3.0) * f4)
                / (T::lit(12.0) * h)
        }
    }
}

/// Stencil evaluation of `∂_axis f(p)` without argument validation.
///
/// Periodic axes wrap; on boundary axes points closer to a face than the
/// central half-width fall back to one-sided stencils of the same order.
pub(crate) fn fd_partial<T: Scalar, F: Fn(&[T]) -> T + ?Sized>(
    f: &F,
    axis: usize,
    p: &[T],
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> T {
    let mut probe = p.to_vec();
    let h = scheme.step;
    let x0 = p[axis];
    let along = |x: T| {
        probe[axis] = domain.wrap(axis, x);
        f(&probe)
    };
    match domain.kind(axis) {
        AxisKind::Periodic => central_difference(along, x0, h, scheme.order),
        AxisKind::Boundary => {
            let (lo, hi) = domain.bounds(axis);
            let reach = scheme.margin();
            if x0 - reach < lo {
                one_sided_difference(along, x0, h, scheme.order)
            } else if x0 + reach > hi {
                one_sided_difference(along, x0, -h, scheme.order)
            } else {
                central_difference(along, x0, h, scheme.order)
            }
        }
    }
}

/// Checked `∂_axis f(p)`.
pub fn partial_derivative<T: Scalar>(
    f: &ScalarField<T>,
    axis: usize,
    p: &[T],
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> Result<T> {
    domain.check_axis(axis)?;
    if p.len() != domain.dim() {
        return Err(Error::ShapeMismatch {
            what: "base point",
            expected: domain.dim(),
            found: p.len(),
        });
    }
    scheme.check_fits(domain, axis)?;
    Ok(fd_partial(&|x: &[T]| f.eval(x), axis, p, domain, scheme))
}

/// `∂_axis f` as a new field. Validation happens once, up front.
pub fn derivative_field<T: Scalar>(
    f: &ScalarField<T>,
    axis: usize,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> Result<ScalarField<T>> {
    domain.check_axis(axis)?;
    scheme.check_fits(domain, axis)?;
    require("differentiated field", std::slice::from_ref(f), Smoothness::C1)?;
    let (f, dom, sch) = (f.clone(), domain.clone(), *scheme);
    let smooth = f.smoothness().derivative();
    Ok(ScalarField::new(smooth, move |p| {
        fd_partial(&|x: &[T]| f.eval(x), axis, p, &dom, &sch)
    }))
}

pub(crate) fn check_scheme<T: Scalar>(domain: &ChartDomain<T>, scheme: &FdScheme<T>) -> Result<()> {
    (0..domain.dim()).try_for_each(|a| scheme.check_fits(domain, a))
}

/// Gauss–Legendre rule of order `q`, optionally repeated over equal panels.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    panels: usize,
}

impl<T: Scalar> QuadratureRule<T> {
    pub fn gauss_legendre(order: usize) -> Result<Self> {
        Self::composite(order, 1)
    }

    /// Composite rule: `panels` equal sub-intervals per axis, `order` nodes each.
    pub fn composite(order: usize, panels: usize) -> Result<Self> {
        if order == 0 || panels == 0 {
            return Err(Error::InvalidQuadrature);
        }
        let (nodes, weights) = legendre_nodes(order);
        Ok(Self {
            nodes,
            weights,
            panels,
        })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    /// Reference nodes on `[-1, 1]`.
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Nodes and weights mapped onto `[lo, hi]`.
    pub fn on_interval(&self, lo: T, hi: T) -> Vec<(T, T)> {
        let n = T::from_usize_lossy(self.panels);
        let width = (hi - lo) / n;
        let half = width / T::lit(2.0);
        let mut out = Vec::with_capacity(self.panels * self.nodes.len());
        for k in 0..self.panels {
            let a = lo + width * T::from_usize_lossy(k);
            let mid = a + half;
            for (&x, &w) in self.nodes.iter().zip(&self.weights) {
                out.push((mid + half * x, half * w));
            }
        }
        out
    }
}

impl<T: Scalar> Default for QuadratureRule<T> {
    fn default() -> Self {
        Self::gauss_legendre(8).expect("order 8 is valid")
    }
}

/// Roots of the Legendre polynomial `P_q` and the matching weights, by
/// Newton iteration on the three-term recurrence.
fn legendre_nodes<T: Scalar>(q: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); q];
    let mut weights = vec![T::zero(); q];
    let qf = T::from_usize_lossy(q);
    let tol = T::epsilon() * T::lit(4.0);
    for i in 0..q.div_ceil(2) {
        let mut x = (T::PI() * (T::from_usize_lossy(i) + T::lit(0.75)) / (qf + T::lit(0.5))).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(q, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() <= tol {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(q, x);
        let w = T::lit(2.0) / ((T::one() - x * x) * d * d);
        nodes[i] = -x;
        nodes[q - 1 - i] = x;
        weights[i] = w;
        weights[q - 1 - i] = w;
    }
    if q % 2 == 1 {
        nodes[q / 2] = T::zero();
    }
    (nodes, weights)
}

fn legendre_with_derivative<T: Scalar>(q: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=q {
        let kf = T::from_usize_lossy(k);
        let p2 = ((kf + kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if q == 0 {
        return (T::one(), T::zero());
    }
    let qf = T::from_usize_lossy(q);
    let d = qf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Tensor-product quadrature of `f` over `axes`, with the remaining
/// coordinates of the probe held at `base`.
fn tensor_quadrature<T: Scalar, F: Fn(&[T]) -> T + ?Sized>(
    f: &F,
    base: Vec<T>,
    axes: &[(usize, Vec<(T, T)>)],
) -> T {
    if axes.is_empty() {
        return f(&base);
    }
    let total: usize = axes.iter().map(|(_, n)| n.len()).product();
    let mut terms = Vec::with_capacity(total);
    let mut idx = vec![0usize; axes.len()];
    let mut p = base;
    'outer: loop {
        let mut w = T::one();
        for (k, (axis, nodes)) in axes.iter().enumerate() {
            let (x, wk) = nodes[idx[k]];
            p[*axis] = x;
            w *= wk;
        }
        terms.push(w * f(&p));
        // odometer, last axis fastest
        for k in (0..axes.len()).rev() {
            idx[k] += 1;
            if idx[k] < axes[k].1.len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    pairwise_sum(&terms)
}

pub(crate) fn integrate_fn<T: Scalar, F: Fn(&[T]) -> T + ?Sized>(
    f: &F,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
) -> T {
    let axes: Vec<_> = (0..domain.dim())
        .map(|a| {
            let (lo, hi) = domain.bounds(a);
            (a, rule.on_interval(lo, hi))
        })
        .collect();
    tensor_quadrature(f, vec![T::zero(); domain.dim()], &axes)
}

/// Integral over the face against its outward-oriented area element.
pub(crate) fn integrate_face_fn<T: Scalar, F: Fn(&[T]) -> T + ?Sized>(
    f: &F,
    face: BoundaryFace,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
) -> T {
    let axes: Vec<_> = (0..domain.dim())
        .filter(|&a| a != face.axis)
        .map(|a| {
            let (lo, hi) = domain.bounds(a);
            (a, rule.on_interval(lo, hi))
        })
        .collect();
    let mut base = vec![T::zero(); domain.dim()];
    base[face.axis] = domain.face_coordinate(face);
    tensor_quadrature(f, base, &axes)
}

/// `∫ coeff dX` by tensor-product Gauss–Legendre quadrature.
pub fn integrate_volume<T: Scalar>(
    coeff: &ScalarField<T>,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
) -> T {
    integrate_fn(&|p: &[T]| coeff.eval(p), domain, rule)
}

/// Integral of a surface density over a face against the outward-oriented
/// face measure. Surface force, loading and potential densities are stored
/// with the orientation sign already folded in and integrate through this.
pub fn integrate_face<T: Scalar>(
    coeff: &ScalarField<T>,
    face: BoundaryFace,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    domain.check_face(face)?;
    Ok(integrate_face_fn(&|p: &[T]| coeff.eval(p), face, domain, rule))
}

/// Integral of the coefficient of `∂_axis ⌟ dX` over a face: the face
/// quadrature times the induced sign.
pub fn integrate_boundary<T: Scalar>(
    coeff: &ScalarField<T>,
    face: BoundaryFace,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    Ok(face.induced_sign::<T>() * integrate_face(coeff, face, domain, rule)?)
}

/// Both sides of Stokes' theorem for `ω = ω^a (∂_a ⌟ dX)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StokesBalance<T> {
    /// `∫ (∂_a ω^a) dX`
    pub interior: T,
    /// `Σ_faces ∫ ω^axis (∂_axis ⌟ dX)`
    pub boundary: T,
}

impl<T: Scalar> StokesBalance<T> {
    pub fn residual(&self) -> T {
        (self.interior - self.boundary).abs()
    }
}

pub fn stokes_balance<T: Scalar>(
    omega: &[ScalarField<T>],
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
    scheme: &FdScheme<T>,
) -> Result<StokesBalance<T>> {
    if omega.len() != domain.dim() {
        return Err(Error::ShapeMismatch {
            what: "(d-1)-form coefficients",
            expected: domain.dim(),
            found: omega.len(),
        });
    }
    require("(d-1)-form coefficient", omega, Smoothness::C1)?;
    check_scheme(domain, scheme)?;
    let divergence = |p: &[T]| {
        let mut acc = T::zero();
        for (a, w) in omega.iter().enumerate() {
            acc += fd_partial(&|x: &[T]| w.eval(x), a, p, domain, scheme);
        }
        acc
    };
    let interior = integrate_fn(&divergence, domain, rule);
    let mut boundary = T::zero();
    for face in domain.boundary_faces() {
        boundary += integrate_boundary(&omega[face.axis], face, domain, rule)?;
    }
    Ok(StokesBalance { interior, boundary })
}

/// `|∫ dω − ∫_∂ ω|` for `ω = ω^a (∂_a ⌟ dX)`.
pub fn stokes_residual<T: Scalar>(
    omega: &[ScalarField<T>],
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
    scheme: &FdScheme<T>,
) -> Result<T> {
    Ok(stokes_balance(omega, domain, rule, scheme)?.residual())
}

/// Uniform probe lattice used for pointwise sup-norm checks.
///
/// Boundary axes are clipped by the stencil margin so probes never need
/// one-sided differences; periodic axes sample `[lo, hi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeGrid<T> {
    points: Vec<Vec<T>>,
}

impl<T: Scalar> ProbeGrid<T> {
    pub fn interior(domain: &ChartDomain<T>, per_axis: usize, scheme: &FdScheme<T>) -> Self {
        let axes: Vec<Vec<T>> = (0..domain.dim())
            .map(|a| axis_samples(domain, a, per_axis, scheme))
            .collect();
        Self {
            points: lattice(&axes),
        }
    }

    /// Lattice on a boundary face, interior to the face.
    pub fn on_face(
        domain: &ChartDomain<T>,
        face: BoundaryFace,
        per_axis: usize,
        scheme: &FdScheme<T>,
    ) -> Self {
        let axes: Vec<Vec<T>> = (0..domain.dim())
            .map(|a| {
                if a == face.axis {
                    vec![domain.face_coordinate(face)]
                } else {
                    axis_samples(domain, a, per_axis, scheme)
                }
            })
            .collect();
        Self {
            points: lattice(&axes),
        }
    }

    pub fn from_points(points: Vec<Vec<T>>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `sup_p f(p)` for a non-negative pointwise quantity.
    pub fn sup(&self, f: impl Fn(&[T]) -> T) -> T {
        self.points
            .iter()
            .fold(T::zero(), |m, p| m.max(f(p)))
    }
}

fn axis_samples<T: Scalar>(
    domain: &ChartDomain<T>,
    axis: usize,
    n: usize,
    scheme: &FdScheme<T>,
) -> Vec<T> {
    let n = n.max(1);
    let (lo, hi) = domain.bounds(axis);
    match domain.kind(axis) {
        AxisKind::Periodic => (0..n)
            .map(|k| lo + (hi - lo) * T::from_usize_lossy(k) / T::from_usize_lossy(n))
            .collect(),
        AxisKind::Boundary => {
            let margin = scheme.margin().min((hi - lo) / T::lit(4.0));
            let (a, b) = (lo + margin, hi - margin);
            if n == 1 {
                return vec![(a + b) / T::lit(2.0)];
            }
            (0..n)
                .map(|k| a + (b - a) * T::from_usize_lossy(k) / T::from_usize_lossy(n - 1))
                .collect()
        }
    }
}

fn lattice<T: Scalar>(axes: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::with_capacity(axes.len())];
    for samples in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                samples.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}
