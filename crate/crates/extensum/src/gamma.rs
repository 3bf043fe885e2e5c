//! Generalized factorial x! = Γ(x + 1) and an exact algebra for the
//! factorials of negative integers.
//!
//! The factorial of a negative integer is infinite.  Writing Ω for the
//! common infinite unit (−1)!, every such factorial has the exact form
//! (−n)! = Ω·(−1)^(n−1)/(n − 1)!, and ratios of these quantities are
//! finite numbers.  [`OmegaNumber`] carries the finite part and the power
//! of Ω separately so that expressions like n!·(−1−n)! = Ω·(−1)^n can be
//! evaluated without ever forming an infinity.

use crate::error::{Error, Result};
use num_traits::{Float, FloatConst};

/// Lanczos coefficients for g = 7 with 9 terms.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Exact values of n! for n = 0..=20; beyond 20 the Lanczos evaluation is
/// accurate to about 15 significant digits.
const FACTORIALS: [f64; 21] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5_040.0,
    40_320.0,
    362_880.0,
    3_628_800.0,
    39_916_800.0,
    479_001_600.0,
    6_227_020_800.0,
    87_178_291_200.0,
    1_307_674_368_000.0,
    20_922_789_888_000.0,
    355_687_428_096_000.0,
    6_402_373_705_728_000.0,
    121_645_100_408_832_000.0,
    2_432_902_008_176_640_000.0,
];

/// Γ(z) by the Lanczos approximation, with the reflection formula for
/// z < 1/2.  Callers must keep z away from the poles at 0, −1, −2, ….
fn gamma_fn<T: Float + FloatConst>(z: T) -> T {
    let half = T::from(0.5).unwrap();
    if z < half {
        // Γ(z)Γ(1 − z) = π / sin(πz)
        T::PI() / ((T::PI() * z).sin() * gamma_fn(T::one() - z))
    } else {
        let z = z - T::one();
        let mut x = T::from(LANCZOS[0]).unwrap();
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            x = x + T::from(c).unwrap() / (z + T::from(i).unwrap());
        }
        let t = z + T::from(LANCZOS_G + 0.5).unwrap();
        (T::from(2.0).unwrap() * T::PI()).sqrt()
            * t.powf(z + half)
            * (-t).exp()
            * x
    }
}

/// The generalized factorial x! = Γ(x + 1) for real x.
///
/// Exact for integer x in 0..=20, accurate to roughly 15 significant
/// digits elsewhere.  Negative integers are poles and yield
/// [`Error::InfiniteFactorial`]; use [`omega_factorial`] to work with
/// them exactly.
pub fn factorial<T: Float + FloatConst>(x: T) -> Result<T> {
    if x < T::zero() && x == x.trunc() {
        return Err(Error::InfiniteFactorial {
            arg: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    if x >= T::zero() && x == x.trunc() && x <= T::from(20.0).unwrap() {
        let n = x.to_usize().unwrap();
        return Ok(T::from(FACTORIALS[n]).unwrap());
    }
    Ok(gamma_fn(x + T::one()))
}

/// A number of the form finite·Ω^omega_power, where Ω = (−1)! is the
/// infinite unit.
///
/// A zero finite part is normalized to omega_power = 0, so 0·Ω is exactly
/// zero.  A negative power of Ω denotes an infinitesimal, which
/// [`OmegaNumber::as_finite`] collapses to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaNumber<T = f64> {
    pub finite: T,
    pub omega_power: i32,
}

impl<T: Float> OmegaNumber<T> {
    pub fn new(finite: T, omega_power: i32) -> Self {
        if finite == T::zero() {
            OmegaNumber {
                finite,
                omega_power: 0,
            }
        } else {
            OmegaNumber {
                finite,
                omega_power,
            }
        }
    }

    /// The infinite unit Ω itself.
    pub fn omega() -> Self {
        OmegaNumber {
            finite: T::one(),
            omega_power: 1,
        }
    }

    /// True when the value is divergent, i.e. carries a positive power
    /// of Ω with a nonzero finite part.
    pub fn is_divergent(&self) -> bool {
        self.omega_power > 0 && self.finite != T::zero()
    }

    /// The value as an ordinary number: the finite part when no Ω
    /// remains, zero when a negative power of Ω suppresses it, and None
    /// when the value diverges.
    pub fn as_finite(&self) -> Option<T> {
        if self.finite == T::zero() || self.omega_power < 0 {
            Some(T::zero())
        } else if self.omega_power == 0 {
            Some(self.finite)
        } else {
            None
        }
    }
}

impl<T: Float> std::ops::Mul for OmegaNumber<T> {
    type Output = OmegaNumber<T>;
    fn mul(self, rhs: Self) -> Self {
        OmegaNumber::new(self.finite * rhs.finite, self.omega_power + rhs.omega_power)
    }
}

impl<T: Float> std::ops::Div for OmegaNumber<T> {
    type Output = OmegaNumber<T>;
    fn div(self, rhs: Self) -> Self {
        OmegaNumber::new(self.finite / rhs.finite, self.omega_power - rhs.omega_power)
    }
}

impl<T: Float> std::ops::Neg for OmegaNumber<T> {
    type Output = OmegaNumber<T>;
    fn neg(self) -> Self {
        OmegaNumber::new(-self.finite, self.omega_power)
    }
}

/// n! for integer n of either sign, as an [`OmegaNumber`].
///
/// For n ≥ 0 this is the ordinary factorial.  For n < 0 it is the exact
/// pole form n! = Ω·(−1)^(−1−n)/(−1−n)!.  Finite parts are exact for
/// |n| ≤ 21 and saturate to infinity past n = 170.
pub fn omega_factorial<T: Float + FloatConst>(n: i64) -> OmegaNumber<T> {
    if n >= 0 {
        OmegaNumber::new(T::from(factorial_int(n)).unwrap(), 0)
    } else {
        let m = -1 - n;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        OmegaNumber::new(T::from(sign / factorial_int(m)).unwrap(), 1)
    }
}

/// n! for n ≥ 0 in double precision, saturating to infinity past 170.
fn factorial_int(n: i64) -> f64 {
    if n <= 20 {
        FACTORIALS[n as usize]
    } else {
        let mut acc = FACTORIALS[20];
        for k in 21..=n {
            acc *= k as f64;
        }
        acc
    }
}

/// The generalized binomial coefficient C(x, i) = x(x−1)…(x−i+1)/i! for
/// real x and integer i ≥ 0.
///
/// Evaluated as a falling product, so it is exact whenever the product
/// is (in particular C(x, i) = 0 exactly for integer 0 ≤ x < i), and it
/// never touches the poles of the factorial.
pub fn generalized_binomial<T: Float>(x: T, i: u32) -> T {
    let mut acc = T::one();
    for j in 0..i {
        acc = acc * (x - T::from(j).unwrap()) / T::from(j + 1).unwrap();
    }
    acc
}
