//! The `linv` command line.
//!
//! Exit codes: 0 success or verdict equal, 1 verdict unequal, 2 input error
//! (including a failed admissibility check), 3 internal assertion (the
//! step-one extension class disagrees with the flag invariant).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linv_core::exactlin::Scalar;
use linv_core::instancegen::{generate, Basis, GenSpec};
use linv_core::linvariants::{self, LError};
use linv_core::phinmod::{self, DeclaredHypotheses, FilPhiNModule};
use linv_core::sscoh;
use serde_json::{json, Map, Value};

use crate::format::{self, Instance, PrimeEntry};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNEQUAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ASSERTION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "linv", version, about = "Exact L-invariants of filtered (phi, N)-modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the admissibility conditions (a)-(f) for every prime.
    Validate(Inputs),
    /// Flag-side invariant L_FM and the operators L^(i).
    Fm {
        #[command(flatten)]
        inputs: Inputs,
        /// Report only L^(i) for this i.
        #[arg(long)]
        operator: Option<usize>,
    },
    /// Cohomological invariant L(W) per prime and their product.
    Gb(Inputs),
    /// Both sides over all primes of all inputs, with a verdict.
    Compare(Inputs),
    /// Write a generated instance with a planted invariant.
    Generate(GenerateArgs),
    /// Dimension and representatives of H^k of C_st or C_cris.
    Cohomology {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "st")]
        complex: ComplexKind,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Args, Debug)]
struct Inputs {
    /// Instance files.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Twist m, overriding the value stored per prime. For `cohomology`,
    /// the module is Tate-twisted by this amount.
    #[arg(long, allow_negative_numbers = true)]
    twist: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
    /// Number of embeddings; defaults to the number of weight lists.
    #[arg(long)]
    e: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    /// Weights `k_1,...,k_n`, one list per embedding separated by `;`. A
    /// single list is repeated for every embedding.
    #[arg(long, allow_hyphen_values = true)]
    weights: String,
    /// Planted invariant as a fraction string.
    #[arg(long, allow_hyphen_values = true)]
    l: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep the data in the Frobenius eigenbasis.
    #[arg(long)]
    identity_basis: bool,
    /// Allow a planted invariant of zero.
    #[arg(long)]
    degenerate: bool,
    /// Output path; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Structured,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ComplexKind {
    St,
    Cris,
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut diagnostics = Vec::new();
    let result = execute(cli.command, out, &mut diagnostics);
    for d in diagnostics {
        let _ = writeln!(err, "{d}");
    }
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, diag: &mut Vec<String>) -> Result<i32, Failure> {
    let (value, format, code) = match command {
        Command::Validate(inputs) => {
            let (v, code) = validate_cmd(&inputs, diag)?;
            (v, inputs.format, code)
        }
        Command::Fm { inputs, operator } => (fm_cmd(&inputs, operator)?, inputs.format, EXIT_OK),
        Command::Gb(inputs) => (gb_cmd(&inputs)?, inputs.format, EXIT_OK),
        Command::Compare(inputs) => {
            let (v, code) = compare_cmd(&inputs)?;
            (v, inputs.format, code)
        }
        Command::Cohomology { inputs, complex, degree } => {
            (cohomology_cmd(&inputs, complex, degree)?, inputs.format, EXIT_OK)
        }
        Command::Generate(args) => {
            let text = generate_cmd(&args)?;
            match &args.out {
                Some(path) => {
                    std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))?
                }
                None => out.write_all(text.as_bytes()).map_err(input_error)?,
            }
            return Ok(EXIT_OK);
        }
    };
    let rendered = match format {
        Format::Text => report::text(&value),
        Format::Structured => report::structured(&value),
    };
    out.write_all(rendered.as_bytes()).map_err(input_error)?;
    Ok(code)
}

fn load(inputs: &Inputs) -> Result<Vec<(String, Instance)>, Failure> {
    inputs
        .files
        .iter()
        .map(|path| {
            let inst = format::read(path).map_err(|e| match e {
                format::FormatError::Syntax(_) | format::FormatError::Io { .. } => input_error(e),
                other => input_error(format!("{}: {other}", path.display())),
            })?;
            Ok((path.display().to_string(), inst))
        })
        .collect()
}

fn twist_of(inputs: &Inputs, entry: &PrimeEntry) -> i64 {
    inputs.twist.unwrap_or(entry.m)
}

fn lerror(context: &str, e: LError) -> Failure {
    let code = if matches!(e, LError::Step1Mismatch { .. }) { EXIT_ASSERTION } else { EXIT_INPUT };
    Failure { code, message: format!("{context}: {e}") }
}

/// Validates one prime and turns failure into an input error.
fn require_admissible(context: &str, module: &FilPhiNModule, m: i64) -> Result<(), Failure> {
    let r = phinmod::validate(module, m).map_err(|e| input_error(format!("{context}: {e}")))?;
    if r.passed() {
        return Ok(());
    }
    let failed: Vec<String> = r
        .outcomes
        .iter()
        .filter(|(_, o)| !o.is_pass())
        .map(|(a, o)| format!("({}) {}", a.letter(), o.label()))
        .collect();
    Err(input_error(format!("{context}: not admissible for m = {m}: {}", failed.join(", "))))
}

fn file_entry(path: &str, hypotheses: &DeclaredHypotheses, primes: Vec<Value>) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("path".into(), path.into());
    map.insert("hypotheses".into(), report::hypotheses(hypotheses));
    map.insert("primes".into(), Value::Array(primes));
    map
}

fn prime_header(index: usize, module: &FilPhiNModule, m: i64) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("block".into(), index.into());
    map.insert("p".into(), module.p().into());
    map.insert("n".into(), module.n().into());
    map.insert("e".into(), module.e().into());
    map.insert("m".into(), m.into());
    map
}

fn validate_cmd(inputs: &Inputs, diag: &mut Vec<String>) -> Result<(Value, i32), Failure> {
    let mut files = Vec::new();
    let mut all_pass = true;
    for (path, inst) in load(inputs)? {
        let mut primes = Vec::new();
        for (i, entry) in inst.primes.iter().enumerate() {
            let m = twist_of(inputs, entry);
            let context = format!("{path}: prime[{i}]");
            let r = phinmod::validate(&entry.module, m)
                .map_err(|e| input_error(format!("{context}: {e}")))?
                .with_declared(inst.hypotheses);
            for (axiom, outcome) in &r.outcomes {
                if let phinmod::AxiomOutcome::Fail(w) = outcome {
                    diag.push(format!("{context}: axiom ({}) {} fails: {w}", axiom.letter(), axiom.name()));
                }
            }
            all_pass &= r.passed();
            let mut map = prime_header(i, &entry.module, m);
            if let Value::Object(body) = report::admissibility(&r) {
                map.extend(body.into_iter().filter(|(k, _)| k != "m"));
            }
            primes.push(Value::Object(map));
        }
        files.push(Value::Object(file_entry(&path, &inst.hypotheses, primes)));
    }
    let mut v = report::header("validate");
    v.insert("files".into(), Value::Array(files));
    v.insert("admissible".into(), all_pass.into());
    Ok((Value::Object(v), if all_pass { EXIT_OK } else { EXIT_INPUT }))
}

fn fm_cmd(inputs: &Inputs, operator: Option<usize>) -> Result<Value, Failure> {
    let mut files = Vec::new();
    for (path, inst) in load(inputs)? {
        let mut primes = Vec::new();
        for (i, entry) in inst.primes.iter().enumerate() {
            let m = twist_of(inputs, entry);
            let context = format!("{path}: prime[{i}]");
            let module = &entry.module;
            require_admissible(&context, module, m)?;
            let l_fm = linvariants::fm_invariant(module, m).map_err(|e| lerror(&context, e))?;
            let mut map = prime_header(i, module, m);
            map.insert("l_fm".into(), report::scalar(&l_fm));
            match operator {
                Some(k) => {
                    let values = (0..module.e())
                        .map(|s| linvariants::fm_operator_at(module, m, k, s))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| lerror(&context, e))?;
                    map.insert("operator".into(), json!({ "index": k, "values": report::vector(&values) }));
                }
                None => {
                    let ops = linvariants::fm_operators(module, m).map_err(|e| lerror(&context, e))?;
                    map.insert("operators".into(), Value::Array(ops.iter().map(|v| report::vector(v)).collect()));
                }
            }
            if let Some(expected) = &entry.expected_l_fm {
                map.insert("expected_l_fm".into(), report::scalar(expected));
                map.insert("matches_expected".into(), (expected == &l_fm).into());
            }
            primes.push(Value::Object(map));
        }
        files.push(Value::Object(file_entry(&path, &inst.hypotheses, primes)));
    }
    let mut v = report::header("fm");
    v.insert("files".into(), Value::Array(files));
    Ok(Value::Object(v))
}

fn gb_cmd(inputs: &Inputs) -> Result<Value, Failure> {
    let mut files = Vec::new();
    for (path, inst) in load(inputs)? {
        let mut primes = Vec::new();
        let mut l_gb = Scalar::one();
        let mut twists = Vec::new();
        for (i, entry) in inst.primes.iter().enumerate() {
            let m = twist_of(inputs, entry);
            twists.push(m);
            let context = format!("{path}: prime[{i}]");
            let module = &entry.module;
            require_admissible(&context, module, m)?;
            let l_w = linvariants::gb_local(module, m).map_err(|e| lerror(&context, e))?;
            let twisted = module.tate_twist(m);
            let ranks = phinmod::frobenius_filtration(&twisted, 0)
                .and_then(|fil| phinmod::w_ranks(&twisted, &fil[module.n() - 1]))
                .map_err(|e| input_error(format!("{context}: {e}")))?;
            l_gb = &l_gb * &l_w;
            let mut map = prime_header(i, module, m);
            map.insert("l_w".into(), report::scalar(&l_w));
            map.insert("w_ranks".into(), report::w_ranks(&ranks));
            primes.push(Value::Object(map));
        }
        let mut file = file_entry(&path, &inst.hypotheses, primes);
        file.insert("l_gb".into(), report::scalar(&l_gb));
        file.insert("mixed_twist".into(), twists.windows(2).any(|w| w[0] != w[1]).into());
        files.push(Value::Object(file));
    }
    let mut v = report::header("gb");
    v.insert("files".into(), Value::Array(files));
    Ok(Value::Object(v))
}

fn compare_cmd(inputs: &Inputs) -> Result<(Value, i32), Failure> {
    let loaded = load(inputs)?;
    let mut modules = Vec::new();
    let mut sources = Vec::new();
    for (path, inst) in &loaded {
        for (i, entry) in inst.primes.iter().enumerate() {
            modules.push((entry.module.clone(), twist_of(inputs, entry)));
            sources.push((path.clone(), i));
        }
    }
    let r = linvariants::compare(&modules).map_err(|e| {
        let context = match &e {
            LError::NotAdmissible { index, .. } | LError::Step1Mismatch { index, .. } => {
                let (path, block) = &sources[*index];
                format!("{path}: prime[{block}]")
            }
            _ => "compare".to_string(),
        };
        lerror(&context, e)
    })?;
    let mut v = report::header("compare");
    let files: Vec<Value> = loaded
        .iter()
        .map(|(path, inst)| json!({ "path": path, "hypotheses": report::hypotheses(&inst.hypotheses) }))
        .collect();
    v.insert("files".into(), Value::Array(files));
    v.extend(report::comparison(&r, &sources));
    Ok((Value::Object(v), if r.equal { EXIT_OK } else { EXIT_UNEQUAL }))
}

fn cohomology_cmd(inputs: &Inputs, complex: ComplexKind, degree: usize) -> Result<Value, Failure> {
    let top = match complex {
        ComplexKind::St => 2,
        ComplexKind::Cris => 1,
    };
    if degree > top {
        return Err(input_error(format!("degree {degree} outside 0..={top} for this complex")));
    }
    let mut files = Vec::new();
    for (path, inst) in load(inputs)? {
        let mut primes = Vec::new();
        for (i, entry) in inst.primes.iter().enumerate() {
            let context = format!("{path}: prime[{i}]");
            let module = match inputs.twist {
                Some(t) => entry.module.tate_twist(t),
                None => entry.module.clone(),
            };
            let mut map = prime_header(i, &module, entry.m);
            map.insert("twist".into(), module.twist().into());
            map.insert(
                "complex".into(),
                match complex {
                    ComplexKind::St => "st",
                    ComplexKind::Cris => "cris",
                }
                .into(),
            );
            let (dims, h) = match complex {
                ComplexKind::St => {
                    let st = sscoh::build_st(&module).map_err(|e| input_error(format!("{context}: {e}")))?;
                    (st.complex.dims().to_vec(), st.h(degree))
                }
                ComplexKind::Cris => {
                    let cr = sscoh::build_cris(&module).map_err(|e| input_error(format!("{context}: {e}")))?;
                    let basis: Vec<Value> = cr.inclusion.basis().iter().map(|b| report::vector(b)).collect();
                    map.insert("ker_n_basis".into(), Value::Array(basis));
                    (cr.complex.dims().to_vec(), cr.h(degree))
                }
            };
            map.insert("term_dims".into(), dims.into());
            if let Value::Object(body) = report::cohomology(&h) {
                map.extend(body);
            }
            primes.push(Value::Object(map));
        }
        files.push(Value::Object(file_entry(&path, &inst.hypotheses, primes)));
    }
    let mut v = report::header("cohomology");
    v.insert("files".into(), Value::Array(files));
    Ok(Value::Object(v))
}

fn parse_weights(text: &str, e: Option<usize>) -> Result<Vec<Vec<i64>>, Failure> {
    let mut lists = text
        .split(';')
        .map(|list| {
            list.split(',')
                .map(|k| k.trim().parse::<i64>().map_err(|err| input_error(format!("--weights: `{k}`: {err}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    match e {
        Some(0) => Err(input_error("--e must be positive")),
        Some(e) if lists.len() == 1 && e > 1 => {
            let first = lists[0].clone();
            lists.resize(e, first);
            Ok(lists)
        }
        Some(e) if e != lists.len() => Err(input_error(format!("--e is {e} but --weights has {} lists", lists.len()))),
        _ => Ok(lists),
    }
}

fn generate_cmd(args: &GenerateArgs) -> Result<String, Failure> {
    let planted_l: Scalar = args.l.parse().map_err(|e| input_error(format!("--l: {e}")))?;
    let spec = GenSpec {
        p: args.p,
        n: args.n,
        m: args.m,
        weights: parse_weights(&args.weights, args.e)?,
        planted_l: planted_l.clone(),
        allow_degenerate: args.degenerate,
        seed: args.seed,
        basis: if args.identity_basis { Basis::Identity } else { Basis::Seeded },
    };
    let module = generate(&spec).map_err(input_error)?;
    let inst = Instance {
        hypotheses: DeclaredHypotheses::default(),
        primes: vec![PrimeEntry { module, m: args.m, expected_l_fm: Some(planted_l) }],
    };
    Ok(format::render(&inst))
}
