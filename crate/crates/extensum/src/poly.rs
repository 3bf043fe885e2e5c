//! Complex polynomial root finding: Durand–Kerner iteration with Newton
//! polishing.  Deterministic for a given coefficient sequence.

use crate::error::{Error, Result};
use num_complex::Complex64;

const MAX_SWEEPS: usize = 500;
const STEP_TOL: f64 = 1e-14;
const RESIDUAL_TOL: f64 = 1e-10;

/// All roots of c_0 + c_1 x + … + c_d x^d; the caller guarantees c_d ≠ 0.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        return Ok(vec![-coeffs[0] / coeffs[1]]);
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();

    // Fixed starting points spread off the real axis.
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();

    for _ in 0..MAX_SWEEPS {
        let mut step_max = 0.0f64;
        for k in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            let d = eval(&monic, z[k]) / denom;
            z[k] -= d;
            step_max = step_max.max(d.norm() / z[k].norm().max(1.0));
        }
        if step_max < STEP_TOL {
            break;
        }
    }

    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(&monic, *zk);
            if dp.norm() > 0.0 {
                *zk -= p / dp;
            }
        }
    }

    for &zk in &z {
        let scale: f64 = monic
            .iter()
            .enumerate()
            .map(|(i, c)| c.norm() * zk.norm().powi(i as i32))
            .sum();
        let residual = eval(&monic, zk).norm();
        if residual > RESIDUAL_TOL * scale {
            return Err(Error::RootsNotConverged { residual });
        }
    }
    Ok(z)
}

fn eval(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn eval_with_derivative(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}
