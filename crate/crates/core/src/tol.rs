//! Tolerance bundle shared by every numeric decision in the crate.
//!
//! The algebra implemented here is exact; floating point is not. Every place
//! a test against zero happens, it happens against one of these declared
//! tolerances, so that the conversion from numerics to combinatorics
//! (multiplicities, circle membership, coprimality) is explicit and
//! configurable.

use crate::scalar::{real, Scalar};

/// Default relative tolerance for trimming trailing coefficients.
pub const TAU_COEFF_DEFAULT: f64 = 1e-12;
/// Default relative tolerance for accepting residuals of reconstructions.
pub const TAU_RES_DEFAULT: f64 = 1e-9;
/// Default residual tolerance for the simultaneous root iteration.
pub const TAU_ROOT_DEFAULT: f64 = 1e-10;
/// Default radius below which root iterates merge into one cluster.
pub const DELTA_CLUSTER_DEFAULT: f64 = 1e-6;
/// Default half-width of the annulus treated as "on the unit circle".
pub const CIRCLE_TOL_DEFAULT: f64 = 1e-8;
/// Default iteration cap for the root finder.
pub const MAX_ITERS_DEFAULT: usize = 200;

/// Numeric tolerances used across the crate.
///
/// A root whose modulus lies within `circle_tol` of 1 is classified as lying
/// on the unit circle. This is deliberately fail-safe: an ambiguous root
/// pushes the verdict towards "not Fredholm", never silently towards
/// invertibility.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances<T> {
    /// Relative coefficient size below which trailing coefficients are trimmed.
    pub tau_coeff: T,
    /// Relative residual below which a reconstruction identity is accepted.
    pub tau_res: T,
    /// Residual bound for accepting a root of a polynomial.
    pub tau_root: T,
    /// Radius for merging nearby root iterates into a multiple root.
    pub delta_cluster: T,
    /// Half-width of the band around the unit circle.
    pub circle_tol: T,
    /// Iteration cap for the simultaneous root iteration.
    pub max_iters: usize,
}

impl<T: Scalar> Tolerances<T> {
    /// The standard profile. Calibrated for `f64`.
    pub fn standard() -> Self {
        Tolerances {
            tau_coeff: real(TAU_COEFF_DEFAULT),
            tau_res: real(TAU_RES_DEFAULT),
            tau_root: real(TAU_ROOT_DEFAULT),
            delta_cluster: real(DELTA_CLUSTER_DEFAULT),
            circle_tol: real(CIRCLE_TOL_DEFAULT),
            max_iters: MAX_ITERS_DEFAULT,
        }
    }

    /// Tighter residual acceptance, for well-conditioned inputs.
    pub fn strict() -> Self {
        Tolerances {
            tau_coeff: real(1e-13),
            tau_res: real(1e-11),
            tau_root: real(1e-12),
            delta_cluster: real(1e-8),
            circle_tol: real(1e-10),
            max_iters: 400,
        }
    }

    /// Looser acceptance, for inputs with clustered or ill-separated roots.
    pub fn relaxed() -> Self {
        Tolerances {
            tau_coeff: real(1e-10),
            tau_res: real(1e-7),
            tau_root: real(1e-8),
            delta_cluster: real(1e-4),
            circle_tol: real(1e-6),
            max_iters: 400,
        }
    }

    /// Tolerances scaled from the machine epsilon of `T`.
    ///
    /// For `f64` this is close to [`Tolerances::standard`]; it is the
    /// profile to use when instantiating the library at `f32`, where the
    /// standard absolute values are below the working precision.
    pub fn for_epsilon() -> Self {
        let eps = T::epsilon();
        Tolerances {
            tau_coeff: eps * real(1e4),
            tau_res: eps * real(1e7),
            tau_root: eps * real(1e6),
            delta_cluster: eps * real(1e10),
            circle_tol: eps * real(1e8),
            max_iters: MAX_ITERS_DEFAULT,
        }
    }

    /// Look up a named profile: `standard`, `strict` or `relaxed`.
    pub fn profile(name: &str) -> Option<Self> {
        match name {
            "standard" | "default" => Some(Self::standard()),
            "strict" => Some(Self::strict()),
            "relaxed" => Some(Self::relaxed()),
            _ => None,
        }
    }
}

impl<T: Scalar> Default for Tolerances<T> {
    fn default() -> Self {
        Self::standard()
    }
}
