use thiserror::Error;

use crate::chart::Smoothness;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("axis {axis} out of range for a {dim}-dimensional chart")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("chart interval on axis {axis} is empty or not finite")]
    InvalidInterval { axis: usize },

    #[error("chart needs at least one axis, and one kind per axis")]
    InvalidChart,

    #[error("point {0:?} lies outside the chart")]
    OutsideChart(Vec<f64>),

    #[error("finite-difference stencil of span {span} does not fit the extent {extent} of axis {axis}")]
    StepTooLarge { axis: usize, span: f64, extent: f64 },

    #[error("finite-difference step must be positive and finite")]
    InvalidStep,

    #[error("quadrature needs a positive order and at least one panel")]
    InvalidQuadrature,

    #[error("axis {axis} is periodic and has no boundary face")]
    PeriodicFace { axis: usize },

    #[error("shape mismatch in {what}: expected {expected}, found {found}")]
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{what} must be at least {required:?}, but is {found:?}")]
    NotDifferentiable {
        what: &'static str,
        required: Smoothness,
        found: Smoothness,
    },

    #[error("wedge of degrees {p} and {q} exceeds dimension {dim}")]
    DegreeOverflow { p: usize, q: usize, dim: usize },

    #[error("form degree {found} given where degree {expected} is required")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("repeated index in multi-index {0:?}")]
    RepeatedIndex(Vec<usize>),

    #[error("metric signature entries must be +1 or -1")]
    InvalidMetric,
}

pub type Result<T> = std::result::Result<T, Error>;
