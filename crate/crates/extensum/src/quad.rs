//! Double-exponential (exp–sinh) quadrature on the half line (0, ∞).
//!
//! The substitution t = exp((π/2)·sinh u) maps the half line to the real
//! axis and makes the trapezoid rule converge geometrically in the step
//! for integrands analytic on (0, ∞) with exponential decay; the error
//! estimate is the difference between successive step halvings.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Coarsest trapezoid step.
const H0: f64 = 0.5;
/// Number of step halvings attempted before giving up.
const MAX_LEVEL: usize = 8;
/// Truncation of the transformed axis; beyond this the node positions
/// themselves would overflow.
const U_CAP: f64 = 6.2;
/// Tail terms are cut once they fall below this fraction of the running
/// sum, but never before |u| exceeds [`U_FLOOR`] (the double-exponential
/// tail can dip before its final decay).
const TERM_EPS: f64 = 1e-18;
const U_FLOOR: f64 = 3.5;

/// Integrates a complex-valued f over (0, ∞) to the requested relative
/// tolerance (absolute for values below 1).  Returns the estimate and
/// the error bound from the last refinement.
pub fn integrate_semi_infinite_complex<F>(f: F, tol: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Complex64,
{
    let g = |u: f64| -> Complex64 {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let t = (half_pi * u.sinh()).exp();
        f(t) * (half_pi * u.cosh() * t)
    };

    let mut prev: Option<Complex64> = None;
    let mut best = Complex64::new(0.0, 0.0);
    let mut err = f64::INFINITY;
    for level in 0..=MAX_LEVEL {
        let h = H0 / (1u64 << level) as f64;
        let mut s = g(0.0);
        for dir in [1.0f64, -1.0] {
            let mut k = 1u64;
            loop {
                let u = dir * k as f64 * h;
                if u.abs() > U_CAP {
                    break;
                }
                let term = g(u);
                s += term;
                if u.abs() > U_FLOOR && term.norm() <= TERM_EPS * (1.0 + s.norm()) {
                    break;
                }
                k += 1;
            }
        }
        let value = s * h;
        if let Some(p) = prev {
            err = (value - p).norm();
            best = value;
            if err <= tol * value.norm().max(1.0) {
                return Ok((value, err));
            }
        } else {
            best = value;
        }
        prev = Some(value);
    }
    Err(Error::QuadratureFailed { best, error: err })
}

/// Real-valued wrapper around [`integrate_semi_infinite_complex`].
pub fn integrate_semi_infinite<F>(f: F, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let (v, e) = integrate_semi_infinite_complex(|t| Complex64::new(f(t), 0.0), tol)?;
    Ok((v.re, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let (v, e) = integrate_semi_infinite(|t| (-t).exp(), 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "{v} (err {e})");
    }

    #[test]
    fn gaussian_moment() {
        let (v, _) = integrate_semi_infinite(|t| t * (-t * t).exp(), 1e-12).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn algebraic_endpoint() {
        // ∫ t^(1/2) e^(−t) dt = Γ(3/2) = √π/2
        let (v, _) = integrate_semi_infinite(|t| t.sqrt() * (-t).exp(), 1e-12).unwrap();
        assert!((v - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn complex_integrand() {
        // ∫ e^(−(1+i)t) dt = 1/(1+i)
        let (v, _) = integrate_semi_infinite_complex(
            |t| (-Complex64::new(1.0, 1.0) * t).exp(),
            1e-12,
        )
        .unwrap();
        let expect = Complex64::new(1.0, 0.0) / Complex64::new(1.0, 1.0);
        assert!((v - expect).norm() < 1e-12);
    }

    #[test]
    fn failure_carries_best_estimate() {
        // Oscillation faster than the finest node spacing can resolve.
        let r = integrate_semi_infinite(|t| (5.0e3 * t).cos() * (-t).exp(), 1e-12);
        match r {
            Err(Error::QuadratureFailed { best, error }) => {
                assert!(best.re.is_finite());
                assert!(error.is_finite());
            }
            other => panic!("expected quadrature failure, got {other:?}"),
        }
    }
}
