//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by the analysis operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Division by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,

    /// The extended Euclidean normalization left a residual above tolerance,
    /// i.e. the inputs share a root (or nearly do).
    #[error("polynomials are not coprime (identity residual {residual:.3e})")]
    NotCoprime {
        /// Residual of `a*u + b*v - 1` in the max norm.
        residual: f64,
    },

    /// The confluent interpolation system could not be solved.
    #[error("singular interpolation system: {0}")]
    SingularSystem(String),

    /// The simultaneous root iteration did not meet its residual bound.
    #[error("root finding did not converge within {max_iters} iterations")]
    NoConvergence {
        /// Iteration cap that was exhausted.
        max_iters: usize,
    },

    /// The argument is not in the operator's domain (a pole inside or on the
    /// closed unit disc).
    #[error("function is not in the operator domain: {0}")]
    NotInDomain(String),

    /// The operator is not invertible.
    #[error("operator is not invertible")]
    NotInvertible,

    /// The requested computation is not defined for this symbol.
    #[error("not supported: {0}")]
    NotSupported(String),

    /// The divisor polynomial has a root on the unit-circle band, so the
    /// division-with-remainder decomposition does not exist.
    #[error("divisor has a root on the unit circle")]
    CircleRoot,

    /// A stated precondition was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Crate-wide result alias.
pub type Result<V> = std::result::Result<V, Error>;
