//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point scalar the calculus is generic over (`f32` or `f64`).
///
/// Finite differences and Gauss–Legendre quadrature are inherently inexact,
/// so there is no rational instantiation.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal, panicking only if the target cannot hold it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Pairwise (cascade) summation in a fixed order.
///
/// The split point depends only on the slice length, so the result is
/// reproducible bit for bit for identical inputs.
pub fn pairwise_sum<T: Scalar>(xs: &[T]) -> T {
    const LEAF: usize = 8;
    if xs.len() <= LEAF {
        let mut acc = T::zero();
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Largest absolute value in `xs`; zero for an empty slice.
pub fn max_abs<T: Scalar>(xs: impl IntoIterator<Item = T>) -> T {
    xs.into_iter().fold(T::zero(), |m, x| m.max(x.abs()))
}
