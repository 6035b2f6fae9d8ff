use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar the whole engine is generic over.
///
/// `default_tol` is the absolute tolerance used for Hermiticity checks,
/// eigensolver convergence and the "numerically zero" negativity clamp.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    fn default_tol() -> Self;
}

impl Real for f64 {
    fn default_tol() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn default_tol() -> Self {
        1e-5
    }
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}
