//! The extension engine: a truncated series is embedded into the unique
//! doubly-infinite extension of a given order, parameterized by ω.
//!
//! Coordinates in the extension basis {Z_i = Σ_n C(n,i) Z^n} are obtained
//! from series coefficients by the inverse linear mappings φ/φ*.  The
//! p-order extension requires A^p(ω) = 0; that root equation is solved in
//! u = ω^(−δ), each root is mapped back to the δ-tuplet representative
//! near the real axis, and the working root ϖ is the one of maximal
//! weight — the one closest to forming a double root.

use crate::error::{Error, Result};
use crate::gamma::generalized_binomial;
use crate::poly;
use crate::signature::{
    to_uniform, transformation_left, transformation_right, vanishing_pattern, Signature,
    WeakSeries,
};
use num_complex::Complex64;
use num_traits::Num;
use std::cmp::Ordering;

/// Distance below which two roots count as coincident (an exact double
/// root), giving them infinite weight.
const COINCIDENT: f64 = 1e-13;
/// Relative tolerance under which two weights count as tied.
const WEIGHT_TIE: f64 = 1e-9;
/// Residual bound on A^p(ϖ) relative to the largest term of the root
/// equation.
const ROOT_RESIDUAL: f64 = 1e-10;

/// The outcome of extending a weak-coupling series: every candidate root
/// with its weight (sorted by decreasing weight), the selected ϖ, and the
/// extension coordinates A^i(ϖ) for i = 0..p−1 (A^p(ϖ) = 0 is dropped).
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionResult {
    pub sig: Signature,
    pub order: usize,
    pub roots: Vec<Complex64>,
    pub weights: Vec<f64>,
    pub chosen: usize,
    pub a_coeffs: Vec<Complex64>,
}

impl ExtensionResult {
    /// The selected root ϖ.
    pub fn varpi(&self) -> Complex64 {
        self.roots[self.chosen]
    }
}

fn pascal_rows<T: Num + Clone>(p: usize) -> Vec<Vec<T>> {
    let mut rows: Vec<Vec<T>> = vec![vec![T::one()]];
    for i in 1..=p {
        let prev = &rows[i - 1];
        let mut row = vec![T::one(); i + 1];
        for n in 1..i {
            row[n] = prev[n - 1].clone() + prev[n].clone();
        }
        rows.push(row);
    }
    rows
}

pub(crate) fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

/// Extension coordinates from series coefficients:
/// A^i = Σ_n C(i,n)·(−1)^(n−i)·A_n.  Exact over integer and rational
/// scalar types; the inverse of [`phi_star`].
pub fn phi<T: Num + Clone>(a: &[T]) -> Vec<T> {
    if a.is_empty() {
        return Vec::new();
    }
    let p = a.len() - 1;
    let pas = pascal_rows::<T>(p);
    (0..=p)
        .map(|i| {
            let mut acc = T::zero();
            for (n, an) in a.iter().enumerate().take(i + 1) {
                let term = pas[i][n].clone() * an.clone();
                acc = if (i - n) % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        })
        .collect()
}

/// Series coefficients from extension coordinates:
/// A_n = Σ_i C(n,i)·V_i.  The inverse of [`phi`].
pub fn phi_star<T: Num + Clone>(v: &[T]) -> Vec<T> {
    if v.is_empty() {
        return Vec::new();
    }
    let p = v.len() - 1;
    let pas = pascal_rows::<T>(p);
    (0..=p)
        .map(|n| {
            let mut acc = T::zero();
            for (i, vi) in v.iter().enumerate().take(n + 1) {
                acc = acc + pas[n][i].clone() * vi.clone();
            }
            acc
        })
        .collect()
}

/// The ω-dependent extension coordinates
/// A^i(ω) = Σ_n C(i,n)·(−1)^(n−i)·A_(δn)/ω^(δn) for i = 0..p.
pub fn a_coefficients(
    a_uniform: &[f64],
    omega: Complex64,
    sig: &Signature,
) -> Result<Vec<Complex64>> {
    if omega.norm() == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let p = a_uniform.len() - 1;
    let wd_inv = Complex64::new(1.0, 0.0) / omega.powi(sig.delta() as i32);
    let mut inv_powers = Vec::with_capacity(p + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=p {
        inv_powers.push(acc);
        acc *= wd_inv;
    }
    Ok((0..=p)
        .map(|i| {
            let mut s = Complex64::new(0.0, 0.0);
            for n in 0..=i {
                let term = binomial_f64(i, n) * a_uniform[n] * inv_powers[n];
                s = if (i - n) % 2 == 0 { s + term } else { s - term };
            }
            s
        })
        .collect())
}

/// Total order used both to sort candidate roots and to select ϖ:
/// greater weight first; among ties, smaller |Im|, then the
/// nonnegative-imaginary representative of a conjugate pair, then
/// smaller |ω − 1|.
fn root_cmp(za: Complex64, wa: f64, zb: Complex64, wb: f64) -> Ordering {
    let tied = if wa.is_infinite() || wb.is_infinite() {
        wa.is_infinite() && wb.is_infinite()
    } else {
        (wa - wb).abs() <= WEIGHT_TIE * wa.abs().max(wb.abs())
    };
    if !tied {
        return wb.partial_cmp(&wa).unwrap_or(Ordering::Equal);
    }
    let (ia, ib) = (za.im.abs(), zb.im.abs());
    if (ia - ib).abs() > WEIGHT_TIE * (1.0 + ia.max(ib)) {
        return ia.partial_cmp(&ib).unwrap_or(Ordering::Equal);
    }
    match (za.im >= 0.0, zb.im >= 0.0) {
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    (za - 1.0)
        .norm()
        .partial_cmp(&(zb - 1.0).norm())
        .unwrap_or(Ordering::Equal)
}

/// The δ-th root of 1/u whose argument lies in (−π/δ, π/δ] — the
/// tuplet member around the positive real axis.
fn tuplet_representative(u: Complex64, delta: i64) -> Complex64 {
    let r = u.norm().powf(-1.0 / delta as f64);
    let theta = -u.arg() / delta as f64;
    let step = 2.0 * std::f64::consts::PI / delta as f64;
    let mut th = theta - step * (theta / step).round();
    if th <= -0.5 * step + 1e-15 {
        th += step;
    }
    Complex64::from_polar(r, th)
}

/// Solves the root equation A^p(ω) = 0 in u = ω^(−δ) and returns one
/// representative per δ-tuplet, sorted by decreasing weight.
pub fn omega_roots(a_uniform: &[f64], sig: &Signature, p: usize) -> Result<Vec<Complex64>> {
    if p < 1 || a_uniform.len() < p + 1 {
        return Err(Error::SeriesTooShort);
    }
    let a = &a_uniform[..=p];
    if a[p] == 0.0 {
        let degree = a.iter().rposition(|&x| x != 0.0).unwrap_or(0);
        return Err(Error::OrderReduction { degree });
    }
    if a[0] == 0.0 {
        let zeros = a.iter().position(|&x| x != 0.0).unwrap_or(p);
        return Err(Error::OrderReduction { degree: p - zeros });
    }
    let coeffs: Vec<Complex64> = (0..=p)
        .map(|n| {
            let sign = if (p - n) % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(sign * binomial_f64(p, n) * a[n], 0.0)
        })
        .collect();
    let u_roots = poly::roots(&coeffs)?;
    let reps: Vec<Complex64> = u_roots
        .iter()
        .map(|&u| tuplet_representative(u, sig.delta()))
        .collect();
    let w: Vec<f64> = (0..reps.len()).map(|i| weight(&reps, i)).collect();
    let mut idx: Vec<usize> = (0..reps.len()).collect();
    idx.sort_by(|&i, &j| root_cmp(reps[i], w[i], reps[j], w[j]));
    Ok(idx.into_iter().map(|i| reps[i]).collect())
}

/// The proximity weight of root i: Σ_(j≠i) 1/|ω_j − ω_i|².  Coincident
/// roots (an exact double root) give +∞, and that root wins selection.
pub fn weight(roots: &[Complex64], i: usize) -> f64 {
    let mut s = 0.0;
    for (j, &r) in roots.iter().enumerate() {
        if j == i {
            continue;
        }
        let d2 = (r - roots[i]).norm_sqr();
        if d2 < COINCIDENT * COINCIDENT {
            return f64::INFINITY;
        }
        s += 1.0 / d2;
    }
    s
}

/// Index of the root of maximal weight, with ties resolved as in
/// [`omega_roots`]' ordering.
pub fn select_root(roots: &[Complex64], weights: &[f64]) -> usize {
    let mut best = 0;
    for i in 1..roots.len() {
        if root_cmp(roots[i], weights[i], roots[best], weights[best]) == Ordering::Less {
            best = i;
        }
    }
    best
}

/// Runs the full extension procedure on a series: convert to uniform
/// signature, solve the root equation, select ϖ, and evaluate the
/// extension coordinates A^i(ϖ).
pub fn extend(series: &WeakSeries) -> Result<ExtensionResult> {
    let sig = series.sig();
    let p = series.order();
    let a_uniform = to_uniform(series)?;
    let roots = omega_roots(&a_uniform, &sig, p)?;
    let weights: Vec<f64> = (0..roots.len()).map(|i| weight(&roots, i)).collect();
    let chosen = select_root(&roots, &weights);
    let varpi = roots[chosen];
    let mut a = a_coefficients(&a_uniform, varpi, &sig)?;

    let scale = (0..=p)
        .map(|n| {
            binomial_f64(p, n) * a_uniform[n].abs()
                * varpi.norm().powi(-(sig.delta() * n as i64) as i32)
        })
        .fold(0.0f64, f64::max);
    let residual = a[p].norm();
    if residual > ROOT_RESIDUAL * scale {
        return Err(Error::RootsNotConverged { residual });
    }
    a.pop();

    Ok(ExtensionResult {
        sig,
        order: p,
        roots,
        weights,
        chosen,
        a_coeffs: a,
    })
}

/// The extended coefficient B̄_n = T_n·ϖ^n·Σ_i C(n/δ, i)·A^i(ϖ) at any
/// integer index n, zero off the signature pattern.
///
/// On the weak side (n = δN, N ≤ p) this reproduces the input series; at
/// n = δ(p+1) it predicts the forthcoming coefficient; on the strong side
/// (n = −α−γN) it feeds the strong-coupling expansion.
pub fn coefficient_at(ext: &ExtensionResult, n: i64) -> Result<Complex64> {
    let sig = ext.sig;
    if !vanishing_pattern(&sig, n) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let t = if n >= 0 && n % sig.delta() == 0 {
        transformation_right(&sig, (n / sig.delta()) as u32)?
    } else {
        transformation_left(&sig, ((-sig.alpha() - n) / sig.gamma()) as u32)?
    };
    let x = n as f64 / sig.delta() as f64;
    let mut s = Complex64::new(0.0, 0.0);
    for (i, &ai) in ext.a_coeffs.iter().enumerate() {
        s += generalized_binomial(x, i as u32) * ai;
    }
    Ok(t * ext.varpi().powi(n as i32) * s)
}

/// Estimate of the N-th strong-coupling coefficient,
/// Ẽ_N ≈ (γ/δ)·B̄_(−α−γN).
pub fn strong_coupling_head(ext: &ExtensionResult, n: u32) -> Result<Complex64> {
    let sig = ext.sig;
    let idx = -sig.alpha() - sig.gamma() * n as i64;
    let ratio = sig.gamma() as f64 / sig.delta() as f64;
    Ok(ratio * coefficient_at(ext, idx)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::WeakSeries;

    fn sig(g: u32, a: i32, d: u32) -> Signature {
        Signature::new(g, a, d).unwrap()
    }

    fn sqrt_pi() -> f64 {
        std::f64::consts::PI.sqrt()
    }

    fn assert_rel(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol * b.abs().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn phi_worked_example() {
        assert_eq!(phi(&[1i64, 2, 3]), vec![1, 1, 0]);
        assert_eq!(phi(&[1i64, 0, 0, 0, 0]), vec![1, -1, 1, -1, 1]);
        assert_eq!(phi_star(&[1i64, 1, 0]), vec![1, 2, 3]);
        assert_eq!(phi_star(&[1i64, 0, 0, 0]), vec![1, 1, 1, 1]);
        assert_eq!(phi_star(&[0i64, 1, 0]), vec![0, 1, 2]);
    }

    #[test]
    fn phi_round_trip_exact() {
        let a = vec![3i64, -7, 11, 5, -2, 9, 1, -4, 6];
        assert_eq!(phi_star(&phi(&a)), a);
        let v = vec![2i64, 0, -5, 8, 13, -1, 7, 4, -9];
        assert_eq!(phi(&phi_star(&v)), v);
    }

    #[test]
    fn a_coefficients_closed_form() {
        let zd = sig(2, 1, 4);
        let w = Complex64::new(1.3, 0.2);
        let a = a_coefficients(&[1.0, 1.0], w, &zd).unwrap();
        // A^1(ω) = −1 + 1/ω^4
        let expect = -Complex64::new(1.0, 0.0) + Complex64::new(1.0, 0.0) / w.powi(4);
        assert!((a[1] - expect).norm() < 1e-14);

        // At ω = 1 the coordinates reduce to φ.
        let uni = sig(1, 1, 1);
        let a = a_coefficients(&[1.0, 2.0, 3.0], Complex64::new(1.0, 0.0), &uni).unwrap();
        for (ai, pi) in a.iter().zip(phi(&[1.0f64, 2.0, 3.0])) {
            assert!((ai - Complex64::new(pi, 0.0)).norm() < 1e-14);
        }

        assert!(matches!(
            a_coefficients(&[1.0, 1.0], Complex64::new(0.0, 0.0), &zd),
            Err(Error::ZeroParameter)
        ));
    }

    #[test]
    fn zero_dim_first_order() {
        let s = WeakSeries::new(sig(2, 1, 4), vec![sqrt_pi(), -0.75 * sqrt_pi()]).unwrap();
        let ext = extend(&s).unwrap();
        assert!((ext.varpi() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(ext.a_coeffs.len(), 1);
        assert!((ext.a_coeffs[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn anharmonic_first_order_root() {
        let s = WeakSeries::new(sig(2, -1, 3), vec![0.5, 3.0 / 16.0]).unwrap();
        let ext = extend(&s).unwrap();
        // ϖ³ = (3/4)√π
        assert_rel(ext.varpi().re, (0.75 * sqrt_pi()).cbrt(), 1e-12);
        assert_eq!(ext.varpi().im, 0.0);
        assert_rel(ext.a_coeffs[0].re, -1.0 / (4.0 * sqrt_pi()), 1e-12);
    }

    #[test]
    fn anharmonic_second_order_roots_and_weights() {
        let s = WeakSeries::new(sig(2, -1, 3), vec![0.5, 0.1875, -0.164_062_5]).unwrap();
        let ext = extend(&s).unwrap();
        assert_rel(ext.roots[0].re, 1.062_185_5, 1e-6);
        assert_rel(ext.roots[1].re, 1.134_520_4, 1e-6);
        assert!(ext.roots.iter().all(|r| r.im.abs() < 1e-12));
        assert_rel(ext.weights[0], 191.119, 1e-4);
        assert_rel(ext.weights[1], 191.119, 1e-4);
        assert_eq!(ext.chosen, 0);
    }

    #[test]
    fn anharmonic_fourth_order_selection() {
        let b = vec![0.5, 0.1875, -0.164_062_5, 0.325_195_312_5, -0.942_535_400_390_625];
        let s = WeakSeries::new(sig(2, -1, 3), b).unwrap();
        let ext = extend(&s).unwrap();
        assert_eq!(ext.chosen, 0);
        assert_rel(ext.roots[0].re, 1.071_350_6, 1e-6);
        assert!(ext.roots[0].im.abs() < 1e-12);
        assert_rel(ext.weights[0], 215.942, 1e-4);
        // conjugate pair next, nonnegative-imaginary member first
        assert_rel(ext.roots[1].re, 1.042_541_9, 1e-6);
        assert_rel(ext.roots[1].im, 0.101_747_0, 1e-5);
        assert_rel(ext.roots[2].im, -0.101_747_0, 1e-5);
        assert_rel(ext.roots[3].re, 1.235_549_3, 1e-6);
    }

    #[test]
    fn extension_property_reproduces_input() {
        let b = vec![0.5, 0.1875, -0.164_062_5, 0.325_195_312_5];
        let s = WeakSeries::new(sig(2, -1, 3), b.clone()).unwrap();
        let ext = extend(&s).unwrap();
        for (n, &bn) in b.iter().enumerate() {
            let back = coefficient_at(&ext, 3 * n as i64).unwrap();
            assert!((back - Complex64::new(bn, 0.0)).norm() <= 1e-9 * bn.abs());
        }
    }

    #[test]
    fn prediction_and_vanishing_indices() {
        let s = WeakSeries::new(sig(2, -1, 3), vec![0.5, 0.1875, -0.164_062_5]).unwrap();
        let ext = extend(&s).unwrap();
        let b9 = coefficient_at(&ext, 9).unwrap();
        assert_rel(b9.re, 0.322_328_64, 1e-6);
        assert_eq!(
            coefficient_at(&ext, 2).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn strong_head_first_order() {
        let s = WeakSeries::new(sig(2, -1, 3), vec![0.5, 3.0 / 16.0]).unwrap();
        let ext = extend(&s).unwrap();
        let e0 = strong_coupling_head(&ext, 0).unwrap();
        assert_rel(e0.re, 0.420_013_864, 1e-7);
        assert_eq!(e0.im, 0.0);
    }

    #[test]
    fn degenerate_order_reduces() {
        // B chosen so the uniform series ends in a zero coordinate.
        let s = WeakSeries::new(sig(1, 1, 1), vec![1.0, -1.0, 0.0]).unwrap();
        assert!(matches!(
            extend(&s),
            Err(Error::OrderReduction { degree: 1 })
        ));
    }

    #[test]
    fn scaling_leaves_selection_unchanged() {
        let b = vec![0.5, 0.1875, -0.164_062_5, 0.325_195_312_5];
        let scaled: Vec<f64> = b.iter().map(|x| x * 7.25).collect();
        let e1 = extend(&WeakSeries::new(sig(2, -1, 3), b).unwrap()).unwrap();
        let e2 = extend(&WeakSeries::new(sig(2, -1, 3), scaled).unwrap()).unwrap();
        assert_eq!(e1.chosen, e2.chosen);
        for (a, b) in e1.roots.iter().zip(e2.roots.iter()) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}
