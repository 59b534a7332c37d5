//! Analysis of Toeplitz-like operators whose rational symbol may have poles
//! on the unit circle.
//!
//! A symbol `omega = s/q` (coprime complex polynomials) induces a densely
//! defined operator on the Hardy space of the disc: multiply by `omega`,
//! discard the strictly proper part with poles on the circle, and project
//! onto nonnegative Fourier modes. This crate computes, exactly at the level
//! of rational representatives:
//!
//! * Fredholmness, index, kernel bases, range codimension ([`fredholm`]),
//! * the Wiener-Hopf-like factorization `omega_- z^kappa omega_0 omega_+`
//!   and the operator identity it induces ([`factor`]),
//! * the operator's action and inverse on rational arguments ([`symbol`],
//!   [`fredholm`]),
//! * the Toeplitz matrix representation with growth diagnostics
//!   ([`matrixrep`]).
//!
//! The core is generic over the real scalar via [`Scalar`] (`f32` or `f64`);
//! the `*64` aliases below fix the double-precision instantiation that the
//! default [`Tolerances`] are calibrated for.

pub mod encode;
pub mod error;
pub mod factor;
pub mod fredholm;
pub mod matrixrep;
pub mod poly;
pub mod roots;
mod scalar;
pub mod symbol;
mod tol;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Scalar;
pub use tol::Tolerances;

/// Double-precision complex number.
pub type C64 = Complex<f64>;
/// Single-precision complex number.
pub type C32 = Complex<f32>;
/// Double-precision polynomial.
pub type Poly64 = poly::Poly<f64>;
/// Double-precision rational function.
pub type RationalFn64 = symbol::RationalFn<f64>;
/// Double-precision tolerance bundle.
pub type Tolerances64 = Tolerances<f64>;
