//! The instance file format, version `linv-instance/1`.
//!
//! An instance is a TOML document:
//!
//! ```toml
//! version = "linv-instance/1"
//!
//! [hypotheses]          # optional, every flag defaults to false
//! gb1 = false
//! gb2 = false
//! gb3 = false
//!
//! [[prime]]
//! p = 5
//! n = 2
//! e = 1
//! m = 1
//! twist = 0             # optional, defaults to 0
//! phi = [["5", "0"], ["0", "1"]]      # row-major
//! mono = [["0", "0"], ["1", "0"]]
//! expected_l_fm = "7/3" # optional
//!
//! [[prime.flag]]        # one per embedding
//! weights = [0, 2]
//! steps = [[["1", "0"], ["0", "1"]], [["1", "-7/3"]], []]   # F_0 .. F_n
//! ```
//!
//! Scalars are strings `"num/den"` or `"num"`. Each flag step lists a basis
//! of `F_i`; files written by this crate use the reduced echelon basis, so
//! writing and reading back is the identity.

use std::fmt;
use std::path::Path;

use linv_core::exactlin::{Matrix, Scalar, Subspace};
use linv_core::phinmod::{DeclaredHypotheses, FilPhiNModule, ModuleError, WeightedFlag};
use serde::{Deserialize, Serialize};

pub const VERSION: &str = "linv-instance/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub hypotheses: DeclaredHypotheses,
    pub primes: Vec<PrimeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeEntry {
    pub module: FilPhiNModule,
    pub m: i64,
    pub expected_l_fm: Option<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Syntax(String),
    #[error("unsupported version `{found}`, expected `{VERSION}`")]
    Version { found: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("{path}: {source}")]
    Module { path: String, source: ModuleError },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    version: String,
    #[serde(default)]
    hypotheses: RawHypotheses,
    #[serde(default)]
    prime: Vec<RawPrime>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawHypotheses {
    #[serde(default)]
    gb1: bool,
    #[serde(default)]
    gb2: bool,
    #[serde(default)]
    gb3: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrime {
    p: u64,
    n: usize,
    e: usize,
    m: i64,
    #[serde(default)]
    twist: i64,
    phi: Vec<Vec<String>>,
    mono: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expected_l_fm: Option<String>,
    flag: Vec<RawFlag>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFlag {
    weights: Vec<i64>,
    steps: Vec<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
struct VersionOnly {
    version: Option<String>,
}

fn field(path: impl fmt::Display, message: impl fmt::Display) -> FormatError {
    FormatError::Field { path: path.to_string(), message: message.to_string() }
}

fn scalar(path: &str, s: &str) -> Result<Scalar, FormatError> {
    s.parse::<Scalar>().map_err(|e| field(path, e))
}

fn vector(path: &str, row: &[String], len: usize) -> Result<Vec<Scalar>, FormatError> {
    if row.len() != len {
        return Err(field(path, format_args!("expected {len} entries, got {}", row.len())));
    }
    row.iter().enumerate().map(|(j, s)| scalar(&format!("{path}[{j}]"), s)).collect()
}

fn matrix(path: &str, rows: &[Vec<String>], n: usize) -> Result<Matrix, FormatError> {
    if rows.len() != n {
        return Err(field(path, format_args!("expected {n} rows, got {}", rows.len())));
    }
    let rows =
        rows.iter().enumerate().map(|(i, r)| vector(&format!("{path}[{i}]"), r, n)).collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(&rows).map_err(|e| field(path, e))
}

fn flag(path: &str, raw: &RawFlag, n: usize) -> Result<WeightedFlag, FormatError> {
    if raw.weights.len() != n {
        return Err(field(format!("{path}.weights"), format_args!("expected {n} weights, got {}", raw.weights.len())));
    }
    if raw.steps.len() != n + 1 {
        return Err(field(format!("{path}.steps"), format_args!("expected {} steps, got {}", n + 1, raw.steps.len())));
    }
    let mut steps = Vec::with_capacity(n + 1);
    for (i, step) in raw.steps.iter().enumerate() {
        let vs = step
            .iter()
            .enumerate()
            .map(|(k, v)| vector(&format!("{path}.steps[{i}][{k}]"), v, n))
            .collect::<Result<Vec<_>, _>>()?;
        let s = Subspace::span(n, &vs).map_err(|e| field(format!("{path}.steps[{i}]"), e))?;
        if s.dim() != n - i {
            return Err(field(
                format!("{path}.steps[{i}]"),
                format_args!("spans dimension {}, expected {}", s.dim(), n - i),
            ));
        }
        steps.push(s);
    }
    WeightedFlag::new(steps, raw.weights.clone())
        .map_err(|source| FormatError::Module { path: path.to_string(), source })
}

fn prime(index: usize, raw: &RawPrime) -> Result<PrimeEntry, FormatError> {
    let path = format!("prime[{index}]");
    let n = raw.n;
    if n == 0 {
        return Err(field(format!("{path}.n"), "must be positive"));
    }
    if raw.flag.len() != raw.e {
        return Err(field(
            format!("{path}.flag"),
            format_args!("expected {} flags (e), got {}", raw.e, raw.flag.len()),
        ));
    }
    let phi = matrix(&format!("{path}.phi"), &raw.phi, n)?;
    let mono = matrix(&format!("{path}.mono"), &raw.mono, n)?;
    let flags = raw
        .flag
        .iter()
        .enumerate()
        .map(|(s, f)| flag(&format!("{path}.flag[{s}]"), f, n))
        .collect::<Result<Vec<_>, _>>()?;
    let module = FilPhiNModule::new(raw.p, phi, mono, flags, raw.twist)
        .map_err(|source| FormatError::Module { path: path.clone(), source })?;
    let expected_l_fm =
        raw.expected_l_fm.as_deref().map(|s| scalar(&format!("{path}.expected_l_fm"), s)).transpose()?;
    Ok(PrimeEntry { module, m: raw.m, expected_l_fm })
}

/// Parses an instance document.
pub fn parse(text: &str) -> Result<Instance, FormatError> {
    let v: VersionOnly = toml::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    match v.version {
        None => return Err(field("version", "missing")),
        Some(found) if found != VERSION => return Err(FormatError::Version { found }),
        Some(_) => {}
    }
    let raw: RawInstance = toml::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    if raw.prime.is_empty() {
        return Err(field("prime", "at least one [[prime]] block is required"));
    }
    let primes = raw.prime.iter().enumerate().map(|(i, p)| prime(i, p)).collect::<Result<Vec<_>, _>>()?;
    let h = &raw.hypotheses;
    Ok(Instance { hypotheses: DeclaredHypotheses { gb1: h.gb1, gb2: h.gb2, gb3: h.gb3 }, primes })
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

/// Renders an instance; the output is a function of the value alone.
pub fn render(instance: &Instance) -> String {
    let raw = RawInstance {
        version: VERSION.to_string(),
        hypotheses: RawHypotheses {
            gb1: instance.hypotheses.gb1,
            gb2: instance.hypotheses.gb2,
            gb3: instance.hypotheses.gb3,
        },
        prime: instance
            .primes
            .iter()
            .map(|entry| {
                let module = &entry.module;
                RawPrime {
                    p: module.p(),
                    n: module.n(),
                    e: module.e(),
                    m: entry.m,
                    twist: module.twist(),
                    phi: module.phi().to_rows().iter().map(|r| strings(r)).collect(),
                    mono: module.mono().to_rows().iter().map(|r| strings(r)).collect(),
                    expected_l_fm: entry.expected_l_fm.as_ref().map(Scalar::to_string),
                    flag: module
                        .flags()
                        .iter()
                        .map(|f| RawFlag {
                            weights: f.weights().to_vec(),
                            steps: f.steps().iter().map(|s| s.basis().iter().map(|b| strings(b)).collect()).collect(),
                        })
                        .collect(),
                }
            })
            .collect(),
    };
    toml::to_string(&raw).expect("instance documents always serialise")
}

pub fn read(path: &Path) -> Result<Instance, FormatError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FormatError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse(&text).map_err(|e| match e {
        FormatError::Syntax(msg) => FormatError::Syntax(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write(path: &Path, instance: &Instance) -> Result<(), FormatError> {
    std::fs::write(path, render(instance))
        .map_err(|e| FormatError::Io { path: path.display().to_string(), message: e.to_string() })
}
