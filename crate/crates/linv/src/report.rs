//! Reports, version `linv-report/1`.
//!
//! Every report is a JSON object whose first key is `"format"`. Keys keep
//! the order shown below and scalars are exact fraction strings, so the
//! structured output is a function of the inputs alone. Within one format
//! version keys are only ever added, never renamed or removed.
//!
//! The text format flattens the same object to `key = value` lines, with
//! nested keys joined by `.` and list positions written `[i]`; it carries
//! exactly the same values.
//!
//! | command      | top-level keys                                                 |
//! |--------------|----------------------------------------------------------------|
//! | `validate`   | `format, command, files[].{path, hypotheses, primes[]}`        |
//! | `fm`         | `format, command, files[].{path, primes[].{l_fm, operators}}`  |
//! | `gb`         | `format, command, files[].{path, primes[], l_gb, mixed_twist}` |
//! | `compare`    | `format, command, files, primes[], l_gb, product, verdict, …` |
//! | `cohomology` | `format, command, files[].{path, primes[].{dim, representatives}}` |

use linv_core::exactlin::{Matrix, Scalar};
use linv_core::linvariants::{LReport, Step1};
use linv_core::phinmod::{AdmissibilityReport, AxiomOutcome, DeclaredHypotheses, WRanks};
use linv_core::sscoh::Cohomology;
use serde_json::{json, Map, Value};

pub const VERSION: &str = "linv-report/1";

pub fn scalar(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector(r)).collect())
}

fn optional(x: Option<&Scalar>) -> Value {
    x.map_or(Value::Null, scalar)
}

/// Starts a report object for `command`.
pub fn header(command: &str) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("format".into(), VERSION.into());
    map.insert("command".into(), command.into());
    map
}

pub fn hypotheses(h: &DeclaredHypotheses) -> Value {
    let word = |b: bool| if b { "declared" } else { "undeclared" };
    json!({ "gb1": word(h.gb1), "gb2": word(h.gb2), "gb3": word(h.gb3) })
}

pub fn admissibility(report: &AdmissibilityReport) -> Value {
    let axioms: Vec<Value> = report
        .outcomes
        .iter()
        .map(|(axiom, outcome)| {
            let mut entry = Map::new();
            entry.insert("axiom".into(), axiom.letter().to_string().into());
            entry.insert("name".into(), axiom.name().into());
            entry.insert("outcome".into(), outcome.label().into());
            match outcome {
                AxiomOutcome::Fail(w) => {
                    entry.insert("witness".into(), w.to_string().into());
                }
                AxiomOutcome::NotEvaluated(why) => {
                    entry.insert("reason".into(), (*why).into());
                }
                AxiomOutcome::Pass => {}
            }
            Value::Object(entry)
        })
        .collect();
    json!({ "m": report.m, "admissible": report.passed(), "axioms": axioms })
}

pub fn w_ranks(r: &WRanks) -> Value {
    json!({ "w0": r.w0, "w1": r.w1, "m0": r.m0, "m1": r.m1, "degenerate": r.degenerate })
}

pub fn step1(s: &Step1) -> Value {
    json!({
        "representative": vector(&s.representative),
        "expected": vector(&s.expected),
        "matches": s.matches,
        "class_ratio": optional(s.class_ratio.as_ref()),
    })
}

pub fn cohomology(h: &Cohomology) -> Value {
    json!({
        "degree": h.degree,
        "dim": h.dim,
        "representatives": Value::Array(h.representatives.iter().map(|r| vector(r)).collect()),
    })
}

/// The comparison part of a `compare` report; `sources` gives the file and
/// block index of each prime.
pub fn comparison(report: &LReport, sources: &[(String, usize)]) -> Map<String, Value> {
    let mut map = Map::new();
    let primes: Vec<Value> = report
        .primes
        .iter()
        .zip(sources)
        .map(|(r, (file, block))| {
            json!({
                "file": file,
                "block": block,
                "p": r.p,
                "n": r.n,
                "e": r.e,
                "m": r.m,
                "l_fm": scalar(&r.l_fm),
                "neg_l_fm": scalar(&-&r.l_fm),
                "l_w": scalar(&r.l_w),
                "operators": Value::Array(r.l_ops.iter().map(|v| vector(v)).collect()),
                "step1": step1(&r.step1),
                "w_ranks": w_ranks(&r.w_ranks),
                "degenerate": r.degenerate,
            })
        })
        .collect();
    map.insert("primes".into(), Value::Array(primes));
    map.insert("l_gb".into(), scalar(&report.l_gb));
    map.insert("product".into(), scalar(&report.product));
    map.insert("verdict".into(), if report.equal { "equal" } else { "unequal" }.into());
    map.insert("mixed_twist".into(), report.mixed_twist.into());
    let provenance: Map<String, Value> =
        report.provenance.iter().map(|(k, v)| ((*k).to_string(), Value::from(*v))).collect();
    map.insert("provenance".into(), Value::Object(provenance));
    map
}

/// Pretty-printed JSON followed by a newline.
pub fn structured(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports always serialise");
    s.push('\n');
    s
}

/// `key = value` lines; strings unquoted, `null` written as `none`.
pub fn text(report: &Value) -> String {
    let mut out = String::new();
    flatten(report, "", &mut out);
    out
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(x, &key, out);
            }
        }
        Value::Array(items) if items.iter().all(is_leaf) => {
            let parts: Vec<String> = items.iter().map(leaf).collect();
            out.push_str(&format!("{prefix} = ({})\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(x, &format!("{prefix}[{i}]"), out);
            }
        }
        leaf_value => out.push_str(&format!("{prefix} = {}\n", leaf(leaf_value))),
    }
}

fn is_leaf(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_flattens_nested_values() {
        let v = json!({ "format": VERSION, "primes": [{ "l_fm": "7/3", "ops": [["7/3"]] }], "x": null });
        assert_eq!(text(&v), "format = linv-report/1\nprimes[0].l_fm = 7/3\nprimes[0].ops[0] = (7/3)\nx = none\n");
    }

    #[test]
    fn structured_keeps_insertion_order() {
        let mut h = header("fm");
        h.insert("a".into(), 1.into());
        let s = structured(&Value::Object(h));
        assert!(s.find("format").unwrap() < s.find("command").unwrap());
        assert!(s.ends_with("}\n"));
    }
}
