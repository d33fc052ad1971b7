use core::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// Real floating-point type the special-function kernels are written against.
///
/// Implemented for `f32` and `f64`. Tolerances inside the kernels scale with
/// [`Scalar::tol`], so the `f32` instantiation is usable at its own precision.
pub trait Scalar: Float + FloatConst + Debug + Display + Default + Send + Sync + 'static {
    /// Converts an `f64` literal. Values out of range saturate.
    fn c(x: f64) -> Self;

    /// Converts an integer count or index.
    fn from_usize(n: usize) -> Self {
        Self::c(n as f64)
    }

    /// Working tolerance for iterative kernels (a small multiple of epsilon).
    fn tol() -> Self {
        Self::epsilon() * Self::c(4.0)
    }
}

impl Scalar for f64 {
    #[inline]
    fn c(x: f64) -> Self {
        x
    }
}

impl Scalar for f32 {
    #[inline]
    fn c(x: f64) -> Self {
        x as f32
    }
}
