//! Series loading: JSON or plain-text coefficient files, built-in model
//! names, exact-rational coefficient strings.

use crate::CliError;
use clap::Args;
use extensum::{models, Signature, WeakSeries};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Deserialize;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Built-in model: "zero-dim" or "anharmonic"
    #[arg(long, conflicts_with_all = ["series", "signature"])]
    pub model: Option<String>,

    /// Coefficient file (JSON or plain text, '#' comments)
    #[arg(long)]
    pub series: Option<PathBuf>,

    /// Signature "γ|α|δ" for files that do not carry one
    #[arg(long)]
    pub signature: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Model {
    ZeroDim,
    Anharmonic,
}

impl Model {
    fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "zero-dim" => Ok(Model::ZeroDim),
            "anharmonic" => Ok(Model::Anharmonic),
            other => Err(CliError::usage(format!(
                "unknown model \"{other}\" (expected \"zero-dim\" or \"anharmonic\")"
            ))),
        }
    }

    fn series(self, p: usize) -> Result<WeakSeries, CliError> {
        let r = match self {
            Model::ZeroDim => models::zero_dim_series(p),
            Model::Anharmonic => models::anharmonic_series(p),
        };
        r.map_err(|e| CliError::usage(format!("cannot build model at order {p}: {e}")))
    }

    /// Oracle for the summed observable at coupling g, where defined.
    pub fn oracle_at(self, g: f64) -> Option<f64> {
        match self {
            Model::ZeroDim => models::oracle_zero_dim(g).ok(),
            Model::Anharmonic => models::oracle_ground_state(g).ok(),
        }
    }

    /// Exact leading strong-coupling coefficient.
    pub fn strong_oracle(self) -> Option<f64> {
        match self {
            Model::ZeroDim => extensum::factorial(-0.75).ok().map(|g| g / 2.0),
            Model::Anharmonic => models::oracle_strong_limit().ok(),
        }
    }

    /// Exact coefficient at uniform index n, where known.
    pub fn exact_coefficient(self, n: usize) -> Option<f64> {
        match self {
            Model::ZeroDim => models::zero_dim_series(n)
                .ok()
                .map(|s| s.coeffs()[n]),
            Model::Anharmonic => models::bender_wu_generate(n)[n].to_f64(),
        }
    }
}

/// A fully resolved input: the truncated series plus everything needed to
/// echo it back verbatim.
pub struct Loaded {
    pub series: WeakSeries,
    pub coeff_strings: Vec<String>,
    pub model: Option<Model>,
}

#[derive(Deserialize)]
struct JsonFile {
    signature: Option<String>,
    coefficients: Option<Vec<serde_json::Value>>,
    model: Option<String>,
    // An extend-report file names its input under "series".
    series: Option<Box<JsonFile>>,
}

struct FileFields {
    signature: Option<String>,
    coefficients: Option<Vec<String>>,
    model: Option<String>,
}

pub fn parse_coefficient(s: &str) -> Result<f64, CliError> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let r = BigRational::new(
            num.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad rational \"{s}\"")))?,
            den.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad rational \"{s}\"")))?,
        );
        return r
            .to_f64()
            .ok_or_else(|| CliError::usage(format!("rational \"{s}\" out of range")));
    }
    s.parse()
        .map_err(|_| CliError::usage(format!("bad coefficient \"{s}\"")))
}

fn parse_signature(s: &str) -> Result<Signature, CliError> {
    Signature::from_str(s).map_err(|e| CliError::usage(format!("bad signature \"{s}\": {e}")))
}

fn file_fields(path: &PathBuf) -> Result<FileFields, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let mut f: JsonFile = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        if f.coefficients.is_none() && f.model.is_none() {
            if let Some(inner) = f.series.take() {
                f = *inner;
            }
        }
        let coefficients = f.coefficients.map(|vals| {
            vals.iter()
                .map(|v| match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect()
        });
        return Ok(FileFields {
            signature: f.signature,
            coefficients,
            model: f.model,
        });
    }
    let mut coefficients = Vec::new();
    for line in text.lines() {
        let data = line.split('#').next().unwrap_or("");
        for tok in data.split([',', ' ', '\t']).filter(|t| !t.is_empty()) {
            coefficients.push(tok.to_string());
        }
    }
    Ok(FileFields {
        signature: None,
        coefficients: Some(coefficients),
        model: None,
    })
}

pub fn load(args: &InputArgs, order: Option<usize>) -> Result<Loaded, CliError> {
    let (model_name, sig_string, coeff_strings) = match (&args.model, &args.series) {
        (Some(name), None) => (Some(name.clone()), args.signature.clone(), None),
        (None, Some(path)) => {
            let fields = file_fields(path)?;
            if fields.model.is_some() && fields.coefficients.is_some() {
                return Err(CliError::usage(format!(
                    "{}: both model and coefficients present",
                    path.display()
                )));
            }
            (
                fields.model,
                args.signature.clone().or(fields.signature),
                fields.coefficients,
            )
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --model with --series"),
        (None, None) => {
            return Err(CliError::usage(
                "no input: pass --model <name> or --series <file>",
            ))
        }
    };

    if let Some(name) = model_name {
        let model = Model::parse(&name)?;
        let p = order
            .ok_or_else(|| CliError::usage("--order is required with a model"))?;
        let series = model.series(p)?;
        let coeff_strings = series.coeffs().iter().map(|c| c.to_string()).collect();
        return Ok(Loaded {
            series,
            coeff_strings,
            model: Some(model),
        });
    }

    let strings = coeff_strings.expect("file inputs carry coefficients");
    let sig = parse_signature(
        sig_string
            .as_deref()
            .ok_or_else(|| CliError::usage("no signature: pass --signature g|a|d"))?,
    )?;
    let p = order.unwrap_or(strings.len().saturating_sub(1));
    if p + 1 > strings.len() {
        return Err(CliError::usage(format!(
            "--order {p} needs {} coefficients, file has {}",
            p + 1,
            strings.len()
        )));
    }
    let strings: Vec<String> = strings[..=p].to_vec();
    let coeffs = strings
        .iter()
        .map(|s| parse_coefficient(s))
        .collect::<Result<Vec<f64>, CliError>>()?;
    let series = WeakSeries::new(sig, coeffs)
        .map_err(|e| CliError::usage(format!("invalid series: {e}")))?;
    Ok(Loaded {
        series,
        coeff_strings: strings,
        model: None,
    })
}
