//! L-invariants by two independent routes, and their comparison.
//!
//! [`fm_invariant`] reads the invariant off the de Rham flag against the
//! Frobenius eigenvectors. [`gb_local`] twists, builds the exceptional
//! subquotient and evaluates a connecting map in semistable cohomology.
//! [`compare`] runs both on a list of local modules sharing a twist and
//! checks `∏ L(W) = ∏ (-L_FM)`.

mod fm;
mod gb;

use alloc::boxed::Box;
use alloc::vec::Vec;

pub use fm::{
    default_v0, fm_invariant, fm_invariant_with, fm_operator, fm_operator_at, fm_operator_at_with, fm_operators,
};
pub use gb::{
    exceptional_w, extension_invariant, extension_invariant_scaled, gb_global, gb_local, gb_ses, step1_class, w_tilde,
    w_tilde_end_data, Ses, Step1,
};

use crate::exactlin::{LinError, Scalar};
use crate::phinmod::{self, Axiom, FilPhiNModule, ModuleError, WRanks};
use crate::sscoh::CohError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Cohomology(#[from] CohError),
    #[error(transparent)]
    Linear(#[from] LinError),
    #[error("module {index} is not admissible: failed {axioms:?}")]
    NotAdmissible { index: usize, axioms: Vec<Axiom> },
    #[error("eigenspace {index} has dimension {dim}, expected 1")]
    EigenspaceDimension { index: usize, dim: usize },
    #[error("expected an eigenline, got dimension {0}")]
    NotALine(usize),
    #[error("v0 is not a nonzero vector of the top eigenline")]
    NotInEigenspace,
    #[error("monodromy chain vanishes early")]
    MonodromyVanishes,
    #[error("embedding {embedding}: flag line does not project onto v0 - L v1")]
    DegenerateProjection { embedding: usize },
    #[error("embeddings give different values: {0:?}")]
    EmbeddingsDisagree(Vec<Scalar>),
    #[error("operator index {i} outside 1..{n}")]
    OperatorIndex { i: usize, n: usize },
    #[error("embedding {sigma} outside 0..{e}")]
    EmbeddingIndex { sigma: usize, e: usize },
    #[error("H^0 of the quotient has dimension {0}, expected 1")]
    UnexpectedH0(usize),
    #[error("boundary is not a combination of alpha and beta")]
    NotInSpan,
    #[error("beta coefficient vanishes")]
    BNotInvertible,
    #[error("no modules given")]
    EmptyInput,
    #[error("modules use different twists")]
    MixedTwist,
    #[error("module {index}: extension class of W-tilde differs from (-L v1, 0, v1)")]
    Step1Mismatch { index: usize, step1: Box<Step1> },
}

/// Per-prime values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeReport {
    pub p: u64,
    pub n: usize,
    pub e: usize,
    pub m: i64,
    pub l_fm: Scalar,
    pub l_w: Scalar,
    /// `L^{(1)}, …, L^{(n-1)}` for each embedding.
    pub l_ops: Vec<Vec<Scalar>>,
    pub step1: Step1,
    pub w_ranks: WRanks,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LReport {
    pub primes: Vec<PrimeReport>,
    /// `∏ L(W)`.
    pub l_gb: Scalar,
    /// `∏ (-L_FM)`.
    pub product: Scalar,
    pub equal: bool,
    /// The modules were given with different twists.
    pub mixed_twist: bool,
    /// Which computation produced each value.
    pub provenance: Vec<(&'static str, &'static str)>,
}

const PROVENANCE: [(&str, &str); 5] = [
    ("l_fm", "flag line projected onto the top two Frobenius eigenlines"),
    ("l_w", "connecting map of the exceptional subquotient in semistable cohomology"),
    ("l_gb", "product of l_w over primes"),
    ("product", "product of -l_fm over primes"),
    ("step1", "extension class of the rank-two quotient from Fil^0 lifts"),
];

/// Validates every module, computes both sides and compares them.
///
/// Unlike [`gb_global`], different twists are accepted and reported through
/// [`LReport::mixed_twist`].
pub fn compare(modules: &[(FilPhiNModule, i64)]) -> Result<LReport, LError> {
    compare_inner(modules, |m| m.clone())
}

fn compare_inner(
    modules: &[(FilPhiNModule, i64)],
    fm_input: impl Fn(&FilPhiNModule) -> FilPhiNModule,
) -> Result<LReport, LError> {
    let (_, m0) = modules.first().ok_or(LError::EmptyInput)?;
    let mixed_twist = modules.iter().any(|(_, m)| m != m0);
    let mut primes = Vec::with_capacity(modules.len());
    for (index, (module, m)) in modules.iter().enumerate() {
        let report = phinmod::validate(module, *m)?;
        if !report.passed() {
            let axioms = report.outcomes.iter().filter(|(_, o)| !o.is_pass()).map(|(a, _)| *a).collect();
            return Err(LError::NotAdmissible { index, axioms });
        }
        let fm_module = fm_input(module);
        let l_fm = fm_invariant(&fm_module, *m)?;
        let l_ops = fm_operators(&fm_module, *m)?;
        let l_w = gb_local(module, *m)?;
        let step1_l = if fm_module == *module { l_fm.clone() } else { fm_invariant(module, *m)? };
        let step1 = step1_class(module, *m, &step1_l)?;
        if !step1.matches {
            return Err(LError::Step1Mismatch { index, step1: Box::new(step1) });
        }
        let twisted = module.tate_twist(*m);
        let d = phinmod::frobenius_filtration(&twisted, 0)?.swap_remove(module.n() - 1);
        let w_ranks = phinmod::w_ranks(&twisted, &d)?;
        primes.push(PrimeReport {
            p: module.p(),
            n: module.n(),
            e: module.e(),
            m: *m,
            degenerate: l_fm.is_zero(),
            l_fm,
            l_w,
            l_ops,
            step1,
            w_ranks,
        });
    }
    let l_gb: Scalar = primes.iter().map(|r| r.l_w.clone()).product();
    let product: Scalar = primes.iter().map(|r| -&r.l_fm).product();
    Ok(LReport { equal: l_gb == product, l_gb, product, primes, mixed_twist, provenance: PROVENANCE.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Subspace;
    use crate::instancegen::{fix_a, fix_b};
    use crate::phinmod::WeightedFlag;

    #[test]
    fn fixtures_compare_equal() {
        let a = fix_a();
        let r = compare(core::slice::from_ref(&a)).unwrap();
        assert!(r.equal);
        assert_eq!(r.l_gb, Scalar::from_frac(-7, 3));
        assert_eq!(r.primes[0].l_fm, Scalar::from_frac(7, 3));
        let r = compare(&[a, fix_b()]).unwrap();
        assert!(r.equal && r.mixed_twist);
        assert_eq!(r.l_gb, Scalar::from_frac(-14, 3));
        assert_eq!(r.product, Scalar::from_frac(-14, 3));
    }

    #[test]
    fn corrupted_flag_is_caught() {
        // Tilt the flag line after validation, on the flag side only.
        let (a, m) = fix_a();
        let corrupt = |module: &FilPhiNModule| {
            let line = Subspace::span(2, &[alloc::vec![Scalar::one(), Scalar::from_int(-4)]]).unwrap();
            let flag = WeightedFlag::new(
                alloc::vec![Subspace::full(2), line, Subspace::zero(2)],
                module.flag(0).weights().to_vec(),
            )
            .unwrap();
            module.with_flag(0, flag).unwrap()
        };
        let r = compare_inner(&[(a, m)], corrupt).unwrap();
        assert!(!r.equal);
        assert_eq!(r.product, Scalar::from_int(-4));
    }

    #[test]
    fn inadmissible_input_is_rejected() {
        let (a, _) = fix_a();
        assert!(matches!(compare(&[(a, 5)]), Err(LError::NotAdmissible { index: 0, .. })));
        assert_eq!(compare(&[]), Err(LError::EmptyInput));
    }
}
