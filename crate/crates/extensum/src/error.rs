use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the extension and resummation pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `factorial` was called on a negative integer, where x! is infinite.
    #[error("infinite factorial at {arg}; use omega_factorial for negative integers")]
    InfiniteFactorial { arg: f64 },

    /// A transformation coefficient came out proportional to the infinite
    /// unit and cannot be used as a finite number.
    #[error("coefficient is Omega-valued at index {index}")]
    OmegaValued { index: i64 },

    /// A transformation coefficient vanishes or diverges where the series
    /// conversion needs its reciprocal.
    #[error("transformation not invertible at index {index}")]
    NotInvertible { index: i64 },

    /// gamma and delta of a signature must be at least 1.
    #[error("invalid signature: gamma and delta must be positive integers")]
    InvalidSignature,

    /// A weak-coupling series needs at least two coefficients to fix the
    /// free parameter of its extension.
    #[error("series must provide at least two coefficients")]
    SeriesTooShort,

    /// The leading or trailing coefficient of the root equation vanishes:
    /// the equation is identically satisfied at this order and the
    /// lower-order extension is already exact.
    #[error("order reduction: the root equation degenerates to degree {degree}")]
    OrderReduction { degree: usize },

    /// The extension parameter must be nonzero.
    #[error("parameter must be nonzero")]
    ZeroParameter,

    /// The polynomial solver failed to reach its residual target.
    #[error("root finding did not converge (residual {residual:.2e})")]
    RootsNotConverged { residual: f64 },

    /// The quadrature did not meet the requested tolerance after maximal
    /// refinement; the best estimate and its error bound are carried along.
    #[error("quadrature failed: error estimate {error:.2e} above tolerance")]
    QuadratureFailed { best: Complex64, error: f64 },

    /// A model series was requested beyond its tabulated order.
    #[error("coefficient unavailable at order {order}; tabulated source stops at order {max}")]
    CoefficientUnavailable { order: usize, max: usize },

    /// The diagonalization oracle failed its basis-doubling convergence check.
    #[error("diagonalization not converged: {first} vs {second} after basis doubling")]
    OracleNotConverged { first: f64, second: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
