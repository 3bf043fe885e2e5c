//! Command-line front end for the extension resummation library.
//!
//! Four subcommands: `extend` reports the candidate roots, the selected
//! parameter ϖ, the extension coordinates A^i, and the coefficients the
//! extension generates on both sides; `predict` gives the forthcoming
//! series coefficient per candidate root; `strong` tabulates the leading
//! strong-coupling coefficient per truncation order; `sum` evaluates the
//! resummed quantity at finite coupling.

mod input;
mod output;

use clap::{Args, Parser, Subcommand};
use extensum::{
    a_coefficients, coefficient_at, extend, generalized_binomial, resum, strong_coupling_head,
    to_uniform, transformation_right, Complex64, Error, ExtensionResult, Signature,
};
use input::{InputArgs, Model};
use output::{
    csv_opt, fmt_complex_trim, fmt_estimate, fmt_fixed, fmt_precision, is_conjugate_pair,
    print_json, roots_line, CoeffOut, ComplexOut, ExtendReport, Format, PredictReport, PredictRow,
    RootOut, SeriesEcho, StrongReport, StrongRow, SumReport, SumRow,
};
use std::process::ExitCode;

/// Input problems exit with 2, numerical failures with 3.
pub enum CliError {
    Usage(String),
    Numeric(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) => m,
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

fn lib_err(e: Error) -> CliError {
    let msg = e.to_string();
    match e {
        Error::OrderReduction { .. }
        | Error::RootsNotConverged { .. }
        | Error::QuadratureFailed { .. }
        | Error::OracleNotConverged { .. } => CliError::Numeric(msg),
        _ => CliError::Usage(msg),
    }
}

#[derive(Parser)]
#[command(name = "extensum", version, about = "Resummation of divergent series by extension")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the extension procedure: roots, ϖ, A^i, coefficients both ways
    Extend(ExtendArgs),
    /// Predict the forthcoming series coefficient per candidate root
    Predict(PredictArgs),
    /// Leading strong-coupling coefficient per truncation order
    Strong(StrongArgs),
    /// Resummed value at finite coupling
    Sum(SumArgs),
}

#[derive(Args)]
struct ExtendArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Truncation order p (required for models; defaults to the whole file)
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Printed decimal digits
    #[arg(long, default_value_t = 7)]
    digits: usize,
}

#[derive(Args)]
struct PredictArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Truncation order p (required for models; defaults to the whole file)
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Printed decimal digits
    #[arg(long, default_value_t = 4)]
    digits: usize,
}

#[derive(Args)]
struct StrongArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Truncation orders, comma-separated (defaults to the whole file)
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Printed decimal digits
    #[arg(long, default_value_t = 7)]
    digits: usize,
}

#[derive(Args)]
struct SumArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Truncation order p (required for models; defaults to the whole file)
    #[arg(long)]
    order: Option<usize>,
    /// Coupling values, comma-separated
    #[arg(long, value_delimiter = ',', required = true)]
    lambda: Vec<f64>,
    /// Quadrature tolerance
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Printed decimal digits
    #[arg(long, default_value_t = 7)]
    digits: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Extend(a) => cmd_extend(a),
        Cmd::Predict(a) => cmd_predict(a),
        Cmd::Strong(a) => cmd_strong(a),
        Cmd::Sum(a) => cmd_sum(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

/// One coefficient of the extension, or the marker that the
/// transformation is Ω-valued at that index.
enum Cell {
    Value(Complex64),
    Divergent,
}

struct CRow {
    index: i64,
    cell: Cell,
    predicted: bool,
}

impl CRow {
    fn to_out(&self) -> CoeffOut {
        match &self.cell {
            Cell::Value(v) => CoeffOut {
                index: self.index,
                value: Some((*v).into()),
                status: if self.predicted { "predicted" } else { "ok" },
            },
            Cell::Divergent => CoeffOut {
                index: self.index,
                value: None,
                status: "divergent",
            },
        }
    }
}

fn coeff_row(ext: &ExtensionResult, index: i64, predicted: bool) -> Result<CRow, CliError> {
    match coefficient_at(ext, index) {
        Ok(v) => Ok(CRow {
            index,
            cell: Cell::Value(v),
            predicted,
        }),
        Err(Error::OmegaValued { .. }) => Ok(CRow {
            index,
            cell: Cell::Divergent,
            predicted,
        }),
        Err(e) => Err(lib_err(e)),
    }
}

fn cmd_extend(args: &ExtendArgs) -> Result<ExitCode, CliError> {
    let loaded = input::load(&args.input, args.order)?;
    let ext = extend(&loaded.series).map_err(lib_err)?;
    let sig = loaded.series.sig();
    let p = ext.order;

    let mut weak = Vec::new();
    for n in 0..=(p as i64 + 1) {
        weak.push(coeff_row(&ext, sig.delta() * n, n == p as i64 + 1)?);
    }
    let mut strong = Vec::new();
    for n in 0..=p as u32 {
        let index = -sig.alpha() - sig.gamma() * n as i64;
        strong.push(match strong_coupling_head(&ext, n) {
            Ok(v) => CRow {
                index,
                cell: Cell::Value(v),
                predicted: false,
            },
            Err(Error::OmegaValued { .. }) => CRow {
                index,
                cell: Cell::Divergent,
                predicted: false,
            },
            Err(e) => return Err(lib_err(e)),
        });
    }

    match args.format {
        Format::Text => {
            let d = args.digits;
            println!("signature {sig}, order p = {p}");
            println!("roots (weight): {}", roots_line(&ext.roots, &ext.weights));
            println!("varpi = {}", fmt_complex_trim(ext.varpi(), d));
            for (i, &ai) in ext.a_coeffs.iter().enumerate() {
                println!("A^{i} = {}", fmt_complex_trim(ai, d));
            }
            println!("A^{p} = 0");
            println!("weak coefficients:");
            for row in &weak {
                let label = format!("B_{}", row.index);
                match &row.cell {
                    Cell::Value(v) => println!(
                        "  {label} = {}{}",
                        fmt_complex_trim(*v, d),
                        if row.predicted { " (predicted)" } else { "" }
                    ),
                    Cell::Divergent => println!("  {label} = divergent"),
                }
            }
            println!("strong coefficients:");
            for (n, row) in strong.iter().enumerate() {
                match &row.cell {
                    Cell::Value(v) => println!("  E~_{n} = {}", fmt_complex_trim(*v, d)),
                    Cell::Divergent => println!("  E~_{n} = divergent"),
                }
            }
        }
        Format::Csv => {
            println!("kind,index,re,im,aux");
            for (i, (&r, &w)) in ext.roots.iter().zip(&ext.weights).enumerate() {
                println!("root,{i},{},{},{}", r.re, r.im, w);
            }
            for (i, a) in ext.a_coeffs.iter().enumerate() {
                println!("a,{i},{},{},", a.re, a.im);
            }
            println!("a,{p},0,0,");
            let coeff_line = |kind: &str, row: &CRow| match &row.cell {
                Cell::Value(v) => println!(
                    "{kind},{},{},{},{}",
                    row.index,
                    v.re,
                    v.im,
                    if row.predicted { "predicted" } else { "ok" }
                ),
                Cell::Divergent => println!("{kind},{},,,divergent", row.index),
            };
            for row in &weak {
                coeff_line("weak", row);
            }
            for row in &strong {
                coeff_line("strong", row);
            }
        }
        Format::Json => {
            let report = ExtendReport {
                signature: sig.to_string(),
                order: p,
                series: SeriesEcho {
                    signature: sig.to_string(),
                    coefficients: loaded.coeff_strings.clone(),
                },
                roots: ext
                    .roots
                    .iter()
                    .zip(&ext.weights)
                    .map(|(&r, &w)| RootOut {
                        re: r.re,
                        im: r.im,
                        weight: w,
                    })
                    .collect(),
                chosen: ext.chosen,
                varpi: ext.varpi().into(),
                a: ext
                    .a_coeffs
                    .iter()
                    .copied()
                    .map(ComplexOut::from)
                    .chain([ComplexOut { re: 0.0, im: 0.0 }])
                    .collect(),
                weak: weak.iter().map(CRow::to_out).collect(),
                strong: strong.iter().map(CRow::to_out).collect(),
            };
            print_json(&report);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn prediction_at(
    a_uniform: &[f64],
    root: Complex64,
    sig: &Signature,
    t: f64,
    p: usize,
) -> Result<Complex64, CliError> {
    let mut a = a_coefficients(a_uniform, root, sig).map_err(lib_err)?;
    a.pop();
    let mut s = Complex64::new(0.0, 0.0);
    for (i, &ai) in a.iter().enumerate() {
        s += generalized_binomial(p as f64 + 1.0, i as u32) * ai;
    }
    let idx = sig.delta() * (p as i64 + 1);
    Ok(t * root.powi(idx as i32) * s)
}

fn cmd_predict(args: &PredictArgs) -> Result<ExitCode, CliError> {
    let loaded = input::load(&args.input, args.order)?;
    let ext = extend(&loaded.series).map_err(lib_err)?;
    let sig = loaded.series.sig();
    let p = ext.order;
    let index = sig.delta() * (p as i64 + 1);
    let d = args.digits;

    let t = match transformation_right(&sig, p as u32 + 1) {
        Ok(t) => Some(t),
        Err(Error::OmegaValued { .. }) => None,
        Err(e) => return Err(lib_err(e)),
    };

    let mut entries: Vec<(Complex64, bool)> = Vec::new();
    if let Some(t) = t {
        let a_uniform = to_uniform(&loaded.series).map_err(lib_err)?;
        let mut i = 0;
        while i < ext.roots.len() {
            let paired =
                i + 1 < ext.roots.len() && is_conjugate_pair(ext.roots[i], ext.roots[i + 1]);
            let selected = ext.chosen == i || (paired && ext.chosen == i + 1);
            entries.push((prediction_at(&a_uniform, ext.roots[i], &sig, t, p)?, selected));
            i += if paired { 2 } else { 1 };
        }
    }
    let exact = loaded.model.and_then(|m| m.exact_coefficient(p + 1));

    match args.format {
        Format::Text => {
            println!("signature {sig}, order p = {p}");
            if t.is_none() {
                println!("B_{index}: divergent");
            } else {
                let parts: Vec<String> = entries
                    .iter()
                    .map(|&(v, selected)| {
                        let s = fmt_estimate(v, d);
                        if selected {
                            format!("{s} (selected)")
                        } else {
                            s
                        }
                    })
                    .collect();
                let exact_part = exact
                    .map(|e| format!("; exact {}", fmt_fixed(e, d)))
                    .unwrap_or_default();
                println!("B_{index}: {}{exact_part}", parts.join(", "));
            }
        }
        Format::Csv => {
            println!("kind,re,im,selected");
            for &(v, selected) in &entries {
                println!("estimate,{},{},{selected}", v.re, v.im);
            }
            if let Some(e) = exact {
                println!("exact,{e},,");
            }
        }
        Format::Json => {
            let report = PredictReport {
                signature: sig.to_string(),
                order: p,
                index,
                status: if t.is_some() { "ok" } else { "divergent" },
                estimates: entries
                    .iter()
                    .map(|&(v, selected)| PredictRow {
                        re: v.re,
                        im: v.im,
                        selected,
                    })
                    .collect(),
                exact,
            };
            print_json(&report);
        }
    }
    Ok(ExitCode::SUCCESS)
}

enum StrongState {
    Value(Complex64),
    Divergent,
    Failed(String),
}

fn cmd_strong(args: &StrongArgs) -> Result<ExitCode, CliError> {
    let orders: Vec<usize> = match &args.order {
        Some(list) if !list.is_empty() => list.clone(),
        _ => vec![input::load(&args.input, None)?.series.order()],
    };
    let d = args.digits;

    let mut signature = String::new();
    let mut oracle: Option<f64> = None;
    let mut rows: Vec<(usize, StrongState)> = Vec::new();
    let mut any_failed = false;
    for &p in &orders {
        let loaded = input::load(&args.input, Some(p))?;
        if signature.is_empty() {
            signature = loaded.series.sig().to_string();
            oracle = loaded.model.and_then(Model::strong_oracle);
        }
        let state = match extend(&loaded.series).map_err(lib_err) {
            Ok(ext) => match strong_coupling_head(&ext, 0) {
                Ok(v) => StrongState::Value(v),
                Err(Error::OmegaValued { .. }) => StrongState::Divergent,
                Err(e) => match lib_err(e) {
                    CliError::Usage(m) => return Err(CliError::Usage(m)),
                    CliError::Numeric(m) => {
                        any_failed = true;
                        StrongState::Failed(m)
                    }
                },
            },
            Err(CliError::Usage(m)) => return Err(CliError::Usage(m)),
            Err(CliError::Numeric(m)) => {
                any_failed = true;
                StrongState::Failed(m)
            }
        };
        rows.push((p, state));
    }

    let precision_of = |v: Complex64| oracle.map(|o| (v - o).norm() / o.abs());

    match args.format {
        Format::Text => {
            println!("signature {signature}");
            for (p, state) in &rows {
                match state {
                    StrongState::Value(v) => {
                        let prec = precision_of(*v)
                            .map(|r| format!(" ({})", fmt_precision(r)))
                            .unwrap_or_default();
                        println!("p = {p}: {}{prec}", fmt_estimate(*v, d));
                    }
                    StrongState::Divergent => println!("p = {p}: divergent"),
                    StrongState::Failed(m) => println!("p = {p}: failed ({m})"),
                }
            }
            if let Some(o) = oracle {
                println!("oracle = {}", fmt_fixed(o, d));
            }
        }
        Format::Csv => {
            println!("order,re,im,oracle,precision,status");
            for (p, state) in &rows {
                match state {
                    StrongState::Value(v) => println!(
                        "{p},{},{},{},{},ok",
                        v.re,
                        v.im,
                        csv_opt(oracle),
                        csv_opt(precision_of(*v))
                    ),
                    StrongState::Divergent => {
                        println!("{p},,,{},,divergent", csv_opt(oracle))
                    }
                    StrongState::Failed(_) => println!("{p},,,{},,failed", csv_opt(oracle)),
                }
            }
        }
        Format::Json => {
            let report = StrongReport {
                signature,
                rows: rows
                    .iter()
                    .map(|(p, state)| match state {
                        StrongState::Value(v) => StrongRow {
                            order: *p,
                            value: Some((*v).into()),
                            precision: precision_of(*v),
                            status: "ok",
                            error: None,
                        },
                        StrongState::Divergent => StrongRow {
                            order: *p,
                            value: None,
                            precision: None,
                            status: "divergent",
                            error: None,
                        },
                        StrongState::Failed(m) => StrongRow {
                            order: *p,
                            value: None,
                            precision: None,
                            status: "failed",
                            error: Some(m.clone()),
                        },
                    })
                    .collect(),
                oracle,
            };
            print_json(&report);
        }
    }
    Ok(if any_failed {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

enum SumState {
    Done {
        value: Complex64,
        quad_error: f64,
        oracle: Option<f64>,
        precision: Option<f64>,
    },
    Failed {
        best: Option<Complex64>,
        quad_error: Option<f64>,
        message: String,
    },
}

fn cmd_sum(args: &SumArgs) -> Result<ExitCode, CliError> {
    for &lam in &args.lambda {
        if !lam.is_finite() || lam <= 0.0 {
            return Err(CliError::usage(format!(
                "coupling must be positive, got {lam}"
            )));
        }
    }
    let loaded = input::load(&args.input, args.order)?;
    let ext = extend(&loaded.series).map_err(lib_err)?;
    let sig = loaded.series.sig();
    let p = ext.order;
    let exponent = 1.0 / sig.delta() as f64;
    let d = args.digits;

    let mut any_failed = false;
    let mut rows: Vec<(f64, SumState)> = Vec::new();
    for &lam in &args.lambda {
        let z = lam.powf(exponent);
        let state = match resum(&ext, z, args.tol) {
            Ok(est) => {
                let oracle = loaded.model.and_then(|m| m.oracle_at(lam));
                let precision = oracle.map(|o| (est.value - o).norm() / o.abs());
                SumState::Done {
                    value: est.value,
                    quad_error: est.quad_error,
                    oracle,
                    precision,
                }
            }
            Err(Error::QuadratureFailed { best, error }) => {
                any_failed = true;
                SumState::Failed {
                    best: Some(best),
                    quad_error: Some(error),
                    message: Error::QuadratureFailed { best, error }.to_string(),
                }
            }
            Err(e) => {
                any_failed = true;
                SumState::Failed {
                    best: None,
                    quad_error: None,
                    message: e.to_string(),
                }
            }
        };
        rows.push((lam, state));
    }

    match args.format {
        Format::Text => {
            println!("signature {sig}, order p = {p}");
            for (lam, state) in &rows {
                match state {
                    SumState::Done {
                        value,
                        oracle,
                        precision,
                        ..
                    } => {
                        let mut line = format!("lambda = {lam}: {}", fmt_estimate(*value, d));
                        if let Some(o) = oracle {
                            line.push_str(&format!("  oracle {}", fmt_fixed(*o, d)));
                        }
                        if let Some(r) = precision {
                            line.push_str(&format!("  ({})", fmt_precision(*r)));
                        }
                        println!("{line}");
                    }
                    SumState::Failed { message, .. } => {
                        println!("lambda = {lam}: failed ({message})")
                    }
                }
            }
        }
        Format::Csv => {
            println!("lambda,re,im,quad_error,oracle,precision,status");
            for (lam, state) in &rows {
                match state {
                    SumState::Done {
                        value,
                        quad_error,
                        oracle,
                        precision,
                    } => println!(
                        "{lam},{},{},{quad_error},{},{},ok",
                        value.re,
                        value.im,
                        csv_opt(*oracle),
                        csv_opt(*precision)
                    ),
                    SumState::Failed {
                        best, quad_error, ..
                    } => println!(
                        "{lam},{},{},{},,,failed",
                        csv_opt(best.map(|b| b.re)),
                        csv_opt(best.map(|b| b.im)),
                        csv_opt(*quad_error)
                    ),
                }
            }
        }
        Format::Json => {
            let report = SumReport {
                signature: sig.to_string(),
                order: p,
                rows: rows
                    .iter()
                    .map(|(lam, state)| match state {
                        SumState::Done {
                            value,
                            quad_error,
                            oracle,
                            precision,
                        } => SumRow {
                            lambda: *lam,
                            value: Some((*value).into()),
                            quad_error: Some(*quad_error),
                            oracle: *oracle,
                            precision: *precision,
                            status: "ok",
                            error: None,
                        },
                        SumState::Failed {
                            best,
                            quad_error,
                            message,
                        } => SumRow {
                            lambda: *lam,
                            value: best.map(|b| b.into()),
                            quad_error: *quad_error,
                            oracle: None,
                            precision: None,
                            status: "failed",
                            error: Some(message.clone()),
                        },
                    })
                    .collect(),
            };
            print_json(&report);
        }
    }
    Ok(if any_failed {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}
