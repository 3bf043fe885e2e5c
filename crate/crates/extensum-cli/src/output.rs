//! Number and table formatting for the text, CSV, and JSON outputs.

use clap::ValueEnum;
use extensum::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Imaginary parts below this relative size are display noise from the
/// root finder, not structure.
const REAL_TOL: f64 = 1e-9;

pub fn is_real(z: Complex64) -> bool {
    z.im.abs() <= REAL_TOL * (1.0 + z.norm())
}

pub fn is_conjugate_pair(a: Complex64, b: Complex64) -> bool {
    !is_real(a) && (a - b.conj()).norm() <= REAL_TOL * (1.0 + a.norm())
}

/// Fixed-point with `digits` decimals; "-0.00…" collapses to "0.00…".
pub fn fmt_fixed(v: f64, digits: usize) -> String {
    let s = format!("{v:.digits$}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Fixed-point with trailing zeros (and a bare decimal point) removed,
/// so exact integers print as integers.
pub fn fmt_trim(v: f64, digits: usize) -> String {
    let s = fmt_fixed(v, digits);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn nonzero(s: &str) -> bool {
    s.bytes().any(|b| (b'1'..=b'9').contains(&b))
}

/// Conjugate-pair estimate: "re ± |im|i", dropping the imaginary part
/// when it rounds away at this precision.
pub fn fmt_estimate(z: Complex64, digits: usize) -> String {
    let im = fmt_fixed(z.im.abs(), digits);
    if nonzero(&im) {
        format!("{} ± {}i", fmt_fixed(z.re, digits), im)
    } else {
        fmt_fixed(z.re, digits)
    }
}

/// A single complex number with its actual sign, trimmed: "1.05 - 0.06i".
pub fn fmt_complex_trim(z: Complex64, digits: usize) -> String {
    let im = fmt_trim(z.im.abs(), digits);
    if nonzero(&im) {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{} {} {}i", fmt_trim(z.re, digits), sign, im)
    } else {
        fmt_trim(z.re, digits)
    }
}

/// Relative precision as a one-digit power of ten: 6.8e-4 → "7e-4".
pub fn fmt_precision(rel: f64) -> String {
    if rel == 0.0 {
        return "0".into();
    }
    if !rel.is_finite() || rel < 0.0 {
        return "inf".into();
    }
    let mut exp = rel.log10().floor() as i32;
    let mut mant = (rel / 10f64.powi(exp)).round() as i64;
    if mant >= 10 {
        mant = 1;
        exp += 1;
    }
    format!("{mant}e{exp}")
}

/// Roots with weights, conjugate pairs folded: "1.062 (191)  1.135 (191)".
pub fn roots_line(roots: &[Complex64], weights: &[f64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < roots.len() {
        let z = roots[i];
        if i + 1 < roots.len() && is_conjugate_pair(z, roots[i + 1]) {
            parts.push(format!(
                "{} ± {}i ({:.0})",
                fmt_fixed(z.re, 3),
                fmt_fixed(z.im.abs(), 3),
                weights[i]
            ));
            i += 2;
        } else {
            parts.push(format!("{} ({:.0})", fmt_fixed(z.re, 3), weights[i]));
            i += 1;
        }
    }
    parts.join("  ")
}

/// CSV field: full round-trip float, or empty for a missing value.
pub fn csv_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
pub struct ComplexOut {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexOut {
    fn from(z: Complex64) -> Self {
        ComplexOut { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
pub struct RootOut {
    pub re: f64,
    pub im: f64,
    pub weight: f64,
}

#[derive(Serialize)]
pub struct SeriesEcho {
    pub signature: String,
    pub coefficients: Vec<String>,
}

#[derive(Serialize)]
pub struct CoeffOut {
    pub index: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ComplexOut>,
    pub status: &'static str,
}

#[derive(Serialize)]
pub struct ExtendReport {
    pub signature: String,
    pub order: usize,
    pub series: SeriesEcho,
    pub roots: Vec<RootOut>,
    pub chosen: usize,
    pub varpi: ComplexOut,
    pub a: Vec<ComplexOut>,
    pub weak: Vec<CoeffOut>,
    pub strong: Vec<CoeffOut>,
}

#[derive(Serialize)]
pub struct SumRow {
    pub lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ComplexOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quad_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<f64>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct SumReport {
    pub signature: String,
    pub order: usize,
    pub rows: Vec<SumRow>,
}

#[derive(Serialize)]
pub struct StrongRow {
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ComplexOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<f64>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct StrongReport {
    pub signature: String,
    pub rows: Vec<StrongRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<f64>,
}

#[derive(Serialize)]
pub struct PredictRow {
    pub re: f64,
    pub im: f64,
    pub selected: bool,
}

#[derive(Serialize)]
pub struct PredictReport {
    pub signature: String,
    pub order: usize,
    pub index: i64,
    pub status: &'static str,
    pub estimates: Vec<PredictRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
}

pub fn print_json<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("report serializes")
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fixed_point_cleans_negative_zero() {
        assert_eq!(fmt_fixed(-0.0000001, 4), "0.0000");
        assert_eq!(fmt_fixed(-0.00006, 4), "-0.0001");
        assert_eq!(fmt_fixed(0.32520525, 4), "0.3252");
    }

    #[test]
    fn trimming_keeps_integers_bare() {
        assert_eq!(fmt_trim(1.0, 7), "1");
        assert_eq!(fmt_trim(4.0, 7), "4");
        assert_eq!(fmt_trim(-1.0, 7), "-1");
        assert_eq!(fmt_trim(1.0621855, 7), "1.0621855");
        assert_eq!(fmt_trim(0.25, 7), "0.25");
    }

    #[test]
    fn estimates_fold_conjugate_noise() {
        assert_eq!(fmt_estimate(c(0.6961768, 8.2e-7), 7), "0.6961768 ± 0.0000008i");
        assert_eq!(fmt_estimate(c(0.6957043, 1e-12), 7), "0.6957043");
        assert_eq!(fmt_estimate(c(-15.61654, -0.00335), 4), "-15.6165 ± 0.0034i");
    }

    #[test]
    fn signed_complex_display() {
        assert_eq!(fmt_complex_trim(c(1.0, 0.0), 7), "1");
        assert_eq!(fmt_complex_trim(c(1.05, -0.06), 7), "1.05 - 0.06i");
        assert_eq!(fmt_complex_trim(c(0.5, 0.25), 7), "0.5 + 0.25i");
    }

    #[test]
    fn precision_brackets() {
        assert_eq!(fmt_precision(6.8e-4), "7e-4");
        assert_eq!(fmt_precision(1.88e-3), "2e-3");
        assert_eq!(fmt_precision(9.6e-7), "1e-6");
        assert_eq!(fmt_precision(1.2e-5), "1e-5");
        assert_eq!(fmt_precision(0.0), "0");
    }

    #[test]
    fn roots_line_folds_pairs() {
        let roots = [c(1.06218552, 0.0), c(1.13452039, 0.0)];
        let line = roots_line(&roots, &[191.1193, 191.1193]);
        assert_eq!(line, "1.062 (191)  1.135 (191)");

        let roots = [c(1.05252293, 0.0605025), c(1.05252293, -0.0605025), c(1.18858592, 0.0)];
        let line = roots_line(&roots, &[113.3943, 113.3943, 90.19701]);
        assert_eq!(line, "1.053 ± 0.061i (113)  1.189 (90)");
    }
}
