use std::path::PathBuf;

use linv::format::{self, Instance, PrimeEntry};
use linv_core::exactlin::Scalar;
use linv_core::instancegen::{fix_a, fix_a_degenerate, fix_b, set_mono_entry};
use linv_core::phinmod::{DeclaredHypotheses, FilPhiNModule};

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn single(module: FilPhiNModule, m: i64, l: Option<Scalar>) -> Instance {
    Instance { hypotheses: DeclaredHypotheses::default(), primes: vec![PrimeEntry { module, m, expected_l_fm: l }] }
}

fn expected() -> Vec<(&'static str, Instance)> {
    let (a, ma) = fix_a();
    let (b, mb) = fix_b();
    let (d, md) = fix_a_degenerate();
    let mutated = set_mono_entry(&a, 0, 0, Scalar::one()).unwrap();
    vec![
        ("fix_a.toml", single(a, ma, Some(Scalar::from_frac(7, 3)))),
        ("fix_b.toml", single(b, mb, Some(Scalar::from_int(-2)))),
        ("fix_a_degenerate.toml", single(d, md, Some(Scalar::zero()))),
        ("fix_a_mutated_relation.toml", single(mutated, ma, None)),
    ]
}

/// Set `LINV_BLESS=1` to rewrite the committed files.
#[test]
fn committed_fixtures_match_constructions() {
    let bless = std::env::var_os("LINV_BLESS").is_some();
    for (name, inst) in expected() {
        let p = path(name);
        if bless {
            format::write(&p, &inst).unwrap();
        }
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text, format::render(&inst), "{name}");
        assert_eq!(format::read(&p).unwrap(), inst, "{name}");
    }
}
