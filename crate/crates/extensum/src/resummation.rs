//! Evaluation of the resummed series at finite coupling.
//!
//! The extension's right part is summed by the integral representation
//!
//!   γ ∫₀^∞ t^(α−1) e^(−t^γ) [ e^(−w) Σ_i A^i(ϖ)(−w)^i/i! ] dt,
//!   w = (ϖZt)^δ,
//!
//! whose Taylor expansion in Z^δ reproduces the extended coefficients
//! B̄(δN)·Z^(δN) term by term.  When α + δN ≤ 0 the N-th term of that
//! expansion is not integrable at t = 0; those terms are subtracted
//! inside the bracket and added back exactly as B̄(δN)·Z^(δN).

use crate::error::{Error, Result};
use crate::extension::{binomial_f64, coefficient_at, strong_coupling_head, ExtensionResult};
use crate::quad::{integrate_semi_infinite, integrate_semi_infinite_complex};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Number of Taylor coefficients of the bracket kept for the small-|w|
/// branch and the subtraction terms.
const C_TERMS: usize = 64;
/// Below this |w| the bracket is evaluated from its Taylor series with
/// the t^(α−1) prefactor absorbed, which avoids forming t^(α−1) alone at
/// the quadrature's extreme nodes.
const SMALL_W: f64 = 0.25;

/// Estimate of the summed series at one coupling value.
///
/// A value is only produced when the quadrature met the requested
/// tolerance; `quad_error` is its final refinement difference.
/// Non-convergence surfaces as [`Error::QuadratureFailed`] carrying the
/// best estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct ResumEstimate {
    pub value: Complex64,
    pub quad_error: f64,
    /// Number of non-integrable leading terms added back analytically,
    /// #{N ≥ 0 : α + δN ≤ 0}.
    pub subtracted_terms: usize,
    /// The coupling g = Z^δ.
    pub coupling: f64,
}

/// Sums the extension at coupling Z > 0 to the given quadrature
/// tolerance.
pub fn resum(ext: &ExtensionResult, z: f64, tol: f64) -> Result<ResumEstimate> {
    if z <= 0.0 {
        return Err(Error::ZeroParameter);
    }
    let sig = ext.sig;
    let (gamma, alpha, delta) = (sig.gamma(), sig.alpha(), sig.delta());
    let a = &ext.a_coeffs;
    let varpi = ext.varpi();

    let mut k_sub = 0usize;
    while alpha + delta * k_sub as i64 <= 0 {
        k_sub += 1;
    }

    // Taylor coefficients of the bracket: c_N = (−1)^N/N!·Σ_i C(N,i)·A^i.
    let mut c = Vec::with_capacity(C_TERMS);
    let mut pref = Complex64::new(1.0, 0.0);
    for n in 0..C_TERMS {
        if n > 0 {
            pref *= -1.0 / n as f64;
        }
        let mut s = Complex64::new(0.0, 0.0);
        for (i, &ai) in a.iter().enumerate().take(n + 1) {
            s += binomial_f64(n, i) * ai;
        }
        c.push(pref * s);
    }

    let wz = (varpi * z).powi(delta as i32);
    let mut wz_pow = Vec::with_capacity(C_TERMS);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..C_TERMS {
        wz_pow.push(acc);
        acc *= wz;
    }

    let mut tail = Complex64::new(0.0, 0.0);
    for n in 0..k_sub {
        let idx = delta * n as i64;
        tail += coefficient_at(ext, idx)? * z.powi(idx as i32);
    }

    let small_exp = (delta * k_sub as i64 + alpha - 1) as i32;
    let integrand = |t: f64| -> Complex64 {
        let env = (-t.powi(gamma as i32)).exp();
        if env == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let td = t.powi(delta as i32);
        let w = wz * td;
        if w.norm() < SMALL_W {
            let mut s = Complex64::new(0.0, 0.0);
            let mut tp = t.powi(small_exp);
            for n in k_sub..C_TERMS {
                let term = c[n] * wz_pow[n] * tp;
                s += term;
                if n > k_sub + 4 && term.norm() <= 1e-18 * (1.0 + s.norm()) {
                    break;
                }
                tp *= td;
            }
            env * s
        } else {
            let mut wp = Complex64::new(1.0, 0.0);
            let mut series = a[0] * wp;
            for (i, &ai) in a.iter().enumerate().skip(1) {
                wp = wp * (-w) / i as f64;
                series += ai * wp;
            }
            let mut bracket = (-w).exp() * series;
            let mut wn = Complex64::new(1.0, 0.0);
            for cn in c.iter().take(k_sub) {
                bracket -= cn * wn;
                wn *= w;
            }
            env * t.powi(alpha as i32 - 1) * bracket
        }
    };

    match integrate_semi_infinite_complex(integrand, tol) {
        Ok((v, e)) => Ok(ResumEstimate {
            value: gamma as f64 * v + tail,
            quad_error: gamma as f64 * e,
            subtracted_terms: k_sub,
            coupling: z.powi(delta as i32),
        }),
        Err(Error::QuadratureFailed { best, error }) => Err(Error::QuadratureFailed {
            best: gamma as f64 * best + tail,
            error: gamma as f64 * error,
        }),
        Err(e) => Err(e),
    }
}

/// The explicit first-order formula for the 2|−1|3 series
/// B_0 = 1/2, B_3 = 3/16:
///
///   E(λ) = 1/2 − (1/(2√π)) ∫₀^∞ t^(−2) e^(−t²)(e^(−λϖ³t³) − 1) dt,
///   ϖ³ = (3/4)√π.
///
/// Kept as an independent regression path for the generic pipeline.
pub fn resum_first_order_closed_form(lambda: f64, tol: f64) -> Result<f64> {
    if lambda <= 0.0 {
        return Err(Error::ZeroParameter);
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let c = lambda * 0.75 * sqrt_pi;
    let (v, _) = integrate_semi_infinite(
        |t| {
            if t < 1e-150 {
                return 0.0;
            }
            (-c * t.powi(3)).exp_m1() * (-t * t).exp() / (t * t)
        },
        tol,
    )?;
    Ok(0.5 - v / (2.0 * sqrt_pi))
}

/// Relative discrepancy between the resummed value at a large coupling
/// and the two-term strong-coupling expansion
/// Σ_N (γ/δ)·B̄(−α−γN)·Z^(−α−γN); decreases as Z grows.
pub fn left_right_consistency(ext: &ExtensionResult, z_large: f64, tol: f64) -> Result<f64> {
    let r = resum(ext, z_large, tol)?;
    let sig = ext.sig;
    let mut s = Complex64::new(0.0, 0.0);
    for n in 0..2u32 {
        let expo = (-sig.alpha() - sig.gamma() * n as i64) as i32;
        s += strong_coupling_head(ext, n)? * z_large.powi(expo);
    }
    Ok((r.value - s).norm() / r.value.norm())
}

const FIT_WINDOW: f64 = 0.04;
const FIT_G_MIN: f64 = 1e-3;
const FIT_NODES: usize = 28;
const FIT_EXTRA_DEGREE: usize = 6;
const FIT_QUAD_TOL: f64 = 1e-13;

/// Recovers the weak-coupling coefficients B_(δ0)..B_(δp) from the
/// integral representation alone, by a Chebyshev least-squares fit of
/// resum() over a small coupling window followed by differentiation at
/// g = 0.  Good to about 1e−8 relative at the highest order.
pub fn weak_expansion_coefficients(ext: &ExtensionResult) -> Result<Vec<f64>> {
    let p = ext.order;
    let delta = ext.sig.delta();
    let deg = p + FIT_EXTRA_DEGREE;

    let mut xs = Vec::with_capacity(FIT_NODES);
    let mut ys = Vec::with_capacity(FIT_NODES);
    for j in 0..FIT_NODES {
        let g = FIT_G_MIN + (FIT_WINDOW - FIT_G_MIN) * j as f64 / (FIT_NODES - 1) as f64;
        let z = g.powf(1.0 / delta as f64);
        ys.push(resum(ext, z, FIT_QUAD_TOL)?.value.re);
        xs.push(2.0 * g / FIT_WINDOW - 1.0);
    }

    let design = DMatrix::from_fn(FIT_NODES, deg + 1, |r, k| chebyshev_t(k, xs[r]));
    let rhs = DVector::from_vec(ys);
    let svd = design.svd(true, true);
    let fit = svd.solve(&rhs, 1e-14).expect("least-squares solve");
    let mut c: Vec<f64> = fit.iter().copied().collect();

    let mut out = Vec::with_capacity(p + 1);
    let mut factor = 1.0; // (2/window)^n / n!
    for n in 0..=p {
        if n > 0 {
            factor *= 2.0 / FIT_WINDOW / n as f64;
        }
        // T_k(−1) = (−1)^k
        let at_zero: f64 = c
            .iter()
            .enumerate()
            .map(|(k, ck)| if k % 2 == 0 { *ck } else { -*ck })
            .sum();
        out.push(factor * at_zero);
        c = chebyshev_derivative(&c);
    }
    Ok(out)
}

fn chebyshev_t(k: usize, x: f64) -> f64 {
    let (mut t0, mut t1) = (1.0, x);
    match k {
        0 => t0,
        1 => t1,
        _ => {
            for _ in 2..=k {
                let t2 = 2.0 * x * t1 - t0;
                t0 = t1;
                t1 = t2;
            }
            t1
        }
    }
}

/// Coefficients of the derivative of a Chebyshev series Σ c_k T_k.
fn chebyshev_derivative(c: &[f64]) -> Vec<f64> {
    let n = c.len() - 1;
    if n == 0 {
        return vec![0.0];
    }
    let mut c = c.to_vec();
    let mut der = vec![0.0; n];
    for j in (3..=n).rev() {
        der[j - 1] = 2.0 * j as f64 * c[j];
        c[j - 2] += j as f64 * c[j] / (j - 2) as f64;
    }
    if n > 1 {
        der[1] = 4.0 * c[2];
    }
    der[0] = c[1];
    der
}
