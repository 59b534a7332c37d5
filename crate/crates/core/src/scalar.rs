//! Scalar abstraction: the library is generic over the real floating-point
//! type underlying its complex arithmetic.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar type for all numerics: `f32` or `f64`.
///
/// Every coefficient in the library is a `Complex<T>` with `T: Scalar`.
/// The concrete aliases at the crate root fix `T = f64`, which is the
/// configuration the default tolerances are calibrated for.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Convert an `f64` constant into the scalar type.
///
/// Panics only if the conversion is unrepresentable, which cannot happen for
/// the finite literals used in this crate.
#[inline]
pub(crate) fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 literal must convert to scalar")
}

