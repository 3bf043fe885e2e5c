//! Resummation of divergent weak-coupling expansions by series extension.
//!
//! Many perturbative expansions Σ B(δn)·Z^(δn) diverge factorially, yet
//! the quantity they describe expands in powers Z^(−α−γN) at strong
//! coupling.  Both behaviours are encoded in a three-number signature
//! (γ|α|δ): the large-order growth of the coefficients and the
//! strong-coupling exponents are two faces of one analytic structure.
//!
//! This crate implements the extension procedure built on that link.
//! Dividing out the factorial growth factor turns the truncated series
//! into a polynomial A^p in ϖ·Z; demanding that the order-p extension
//! A^p(ϖ) vanish fixes the single free parameter ϖ as a root of a
//! degree-p polynomial, selected by a clustering weight.  The result is
//! an order-p approximant that
//!
//! - reproduces the p+1 input coefficients exactly,
//! - predicts every forthcoming coefficient,
//! - yields the strong-coupling coefficients in closed form, and
//! - evaluates to a finite value at any coupling through a single
//!   well-convergent integral.
//!
//! # Layout
//!
//! - [`Signature`], [`WeakSeries`]: input describing a truncated series.
//! - [`extend`]: the core construction, producing an [`ExtensionResult`].
//! - [`coefficient_at`], [`strong_coupling_head`]: coefficient-level output.
//! - [`resum`]: finite-coupling evaluation via the integral representation.
//! - [`models`]: two built-in series (a zero-dimensional partition
//!   function and the quartic anharmonic oscillator) together with
//!   brute-force oracles used to validate the method against ground truth.
//!
//! # Example
//!
//! ```
//! use extensum::{extend, models, resum};
//!
//! let series = models::anharmonic_series(3).unwrap();
//! let ext = extend(&series).unwrap();
//! // Ground-state energy at coupling λ = Z³ = 2; exact value 0.6961758…
//! let est = resum(&ext, 2f64.cbrt(), 1e-10).unwrap();
//! assert!((est.value.re - 0.6961758).abs() < 1e-3);
//! ```

pub mod error;
pub mod extension;
pub mod gamma;
pub mod models;
mod poly;
pub mod quad;
pub mod resummation;
pub mod signature;

pub use error::{Error, Result};
pub use extension::{
    a_coefficients, coefficient_at, extend, omega_roots, phi, phi_star, select_root,
    strong_coupling_head, weight, ExtensionResult,
};
pub use gamma::{factorial, generalized_binomial, omega_factorial, OmegaNumber};
pub use quad::{integrate_semi_infinite, integrate_semi_infinite_complex};
pub use resummation::{
    left_right_consistency, resum, resum_first_order_closed_form, weak_expansion_coefficients,
    ResumEstimate,
};
pub use signature::{
    to_uniform, transformation_left, transformation_omega, transformation_right,
    vanishing_pattern, Signature, WeakSeries,
};

/// Scalar type used throughout the concrete numerical pipeline.
pub type Real = f64;

pub use num_complex::Complex64;
