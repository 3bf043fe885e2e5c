//! Strong-coupling signatures (γ|α|δ), their transformation coefficients,
//! and the conversion between a physical series and its uniform counterpart.
//!
//! A signature fixes which powers of Z carry nonzero coefficients: the
//! weak-coupling side lives on Z^(δN) and the strong-coupling side on
//! Z^(−α−γN), N ≥ 0.  The transformation sequence
//! T_n = (−1 − n/δ)!·(−1 + (α+n)/γ)!/Ω imprints exactly this pattern, and
//! B = T·A links a physical series B to a series A of uniform signature
//! 1|1|1 on which the extension machinery operates.

use crate::error::{Error, Result};
use crate::gamma::{factorial, omega_factorial, OmegaNumber};
use std::fmt;
use std::str::FromStr;

/// The integer triplet (γ|α|δ) of a strong-coupling signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    gamma: u32,
    alpha: i32,
    delta: u32,
}

impl Signature {
    pub fn new(gamma: u32, alpha: i32, delta: u32) -> Result<Self> {
        if gamma == 0 || delta == 0 {
            return Err(Error::InvalidSignature);
        }
        Ok(Signature {
            gamma,
            alpha,
            delta,
        })
    }

    pub fn gamma(&self) -> i64 {
        self.gamma as i64
    }

    pub fn alpha(&self) -> i64 {
        self.alpha as i64
    }

    pub fn delta(&self) -> i64 {
        self.delta as i64
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}|{}", self.gamma, self.alpha, self.delta)
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Parses the serialized form "gamma|alpha|delta", e.g. "2|-1|3".
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidSignature);
        }
        let gamma: u32 = parts[0].trim().parse().map_err(|_| Error::InvalidSignature)?;
        let alpha: i32 = parts[1].trim().parse().map_err(|_| Error::InvalidSignature)?;
        let delta: u32 = parts[2].trim().parse().map_err(|_| Error::InvalidSignature)?;
        Signature::new(gamma, alpha, delta)
    }
}

/// A truncated weak-coupling series: coefficients B_(δn) for n = 0..p
/// together with the signature they follow.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakSeries {
    sig: Signature,
    coeffs: Vec<f64>,
}

impl WeakSeries {
    /// At least two coefficients are required: the extension has one free
    /// parameter, fixed by the highest retained order.
    pub fn new(sig: Signature, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::SeriesTooShort);
        }
        Ok(WeakSeries { sig, coeffs })
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// The truncation order p (index of the last retained coefficient).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// The weak-coupling transformation coefficient
/// T_(δN) = (−1)^N·(−1 + (α+δN)/γ)!/N!.
///
/// Signals [`Error::OmegaValued`] when (α+δN)/γ is a nonpositive integer,
/// where the factorial is a pole and the coefficient carries a power of Ω.
pub fn transformation_right(sig: &Signature, n: u32) -> Result<f64> {
    reduced_t(sig.alpha() + sig.delta() * n as i64, sig.gamma(), n, sig.delta() * n as i64)
}

/// The strong-coupling transformation coefficient
/// T_(−α−γN) = (−1)^N·(−1 + (α+γN)/δ)!/N!.
pub fn transformation_left(sig: &Signature, n: u32) -> Result<f64> {
    reduced_t(sig.alpha() + sig.gamma() * n as i64, sig.delta(), n, -sig.alpha() - sig.gamma() * n as i64)
}

fn reduced_t(num: i64, den: i64, n: u32, index: i64) -> Result<f64> {
    if num % den == 0 && num / den <= 0 {
        return Err(Error::OmegaValued { index });
    }
    let x = num as f64 / den as f64 - 1.0;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * factorial(x)? / factorial(n as f64)?)
}

/// Whether index n carries a nonzero transformation coefficient, i.e.
/// n = δN or n = −α−γN for some N ≥ 0.
pub fn vanishing_pattern(sig: &Signature, n: i64) -> bool {
    let right = n >= 0 && n % sig.delta() == 0;
    let c = -sig.alpha() - n;
    let left = c >= 0 && c % sig.gamma() == 0;
    right || left
}

/// T_n evaluated by the explicit Ω algebra
/// T_n = (−1 − n/δ)!·(−1 + (α+n)/γ)!/Ω, with no reduction applied.
///
/// Cross-check path for [`transformation_right`]/[`transformation_left`]:
/// the result is exactly zero off the signature's index pattern, finite
/// and equal to the reduced closed forms on it, and divergent exactly
/// where those signal an Ω-valued coefficient.
pub fn transformation_omega(sig: &Signature, n: i64) -> OmegaNumber<f64> {
    let a = ratio_factorial(-sig.delta() - n, sig.delta());
    let b = ratio_factorial(sig.alpha() + n - sig.gamma(), sig.gamma());
    a * b / OmegaNumber::omega()
}

/// (num/den)! as an OmegaNumber, exact at the poles.
fn ratio_factorial(num: i64, den: i64) -> OmegaNumber<f64> {
    if num % den == 0 {
        omega_factorial(num / den)
    } else {
        OmegaNumber::new(
            factorial(num as f64 / den as f64).expect("non-integer argument"),
            0,
        )
    }
}

/// Divides out the transformation: A_(δn) = B_(δn)/T_(δn), mapping the
/// series to its uniform-signature counterpart.
pub fn to_uniform(series: &WeakSeries) -> Result<Vec<f64>> {
    let sig = series.sig();
    series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, &b)| {
            let t = transformation_right(&sig, n as u32)?;
            if t == 0.0 {
                return Err(Error::NotInvertible {
                    index: sig.delta() * n as i64,
                });
            }
            Ok(b / t)
        })
        .collect()
}
