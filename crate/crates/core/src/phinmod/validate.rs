use alloc::vec::Vec;
use core::fmt;

use super::filtration::{filtration_from_lines, invariants_dim};
use super::{exceptional_subquotient, is_regular, FilPhiNModule, ModuleError};
use crate::exactlin::{self, Matrix, Scalar, Subspace};

/// The six local admissibility conditions checked by [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `Nφ = pφN` and `N` nilpotent.
    Relation,
    /// Eigenvalues `p^m, …, p^{m-n+1}`, each with a line of eigenvectors.
    Eigenvalues,
    /// `N` carries `D^{(i)}` onto `D^{(i+1)}` and kills `D^{(n-1)}`.
    Monodromy,
    /// `F_{σ,i} ∩ Fil^φ_i = 0` for all `σ`, `i`.
    Orthogonality,
    /// `k_{σ,n} > m > k_{σ,n-1}`.
    WeightWindow,
    /// `H^0(W^∨(1)) = 0` for the exceptional subquotient `W`.
    CyclotomicInvariants,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Relation,
        Axiom::Eigenvalues,
        Axiom::Monodromy,
        Axiom::Orthogonality,
        Axiom::WeightWindow,
        Axiom::CyclotomicInvariants,
    ];

    pub fn letter(self) -> char {
        match self {
            Axiom::Relation => 'a',
            Axiom::Eigenvalues => 'b',
            Axiom::Monodromy => 'c',
            Axiom::Orthogonality => 'd',
            Axiom::WeightWindow => 'e',
            Axiom::CyclotomicInvariants => 'f',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Relation => "relation",
            Axiom::Eigenvalues => "eigenvalues",
            Axiom::Monodromy => "monodromy",
            Axiom::Orthogonality => "orthogonality",
            Axiom::WeightWindow => "weight_window",
            Axiom::CyclotomicInvariants => "cyclotomic_invariants",
        }
    }
}

/// Evidence for a failed axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `Nφ - pφN`.
    RelationDefect(Matrix),
    /// `N^n`, nonzero.
    NotNilpotent(Matrix),
    EigenspaceDimension {
        index: usize,
        eigenvalue: Scalar,
        dim: usize,
    },
    /// `N d_i` has no component along `D^{(i+1)}`.
    MonodromyStep {
        index: usize,
        image: Vec<Scalar>,
    },
    /// `N d_{n-1} ≠ 0`.
    MonodromyTop {
        image: Vec<Scalar>,
    },
    Transversality {
        embedding: usize,
        index: usize,
        intersection: Subspace,
    },
    WeightWindow {
        embedding: usize,
        lower: i64,
        upper: i64,
    },
    CyclotomicInvariants {
        dim: usize,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vec = |f: &mut fmt::Formatter<'_>, v: &[Scalar]| -> fmt::Result {
            write!(f, "(")?;
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        };
        match self {
            Witness::RelationDefect(m) => write!(f, "N*phi - p*phi*N = {m}"),
            Witness::NotNilpotent(m) => write!(f, "N^n = {m}"),
            Witness::EigenspaceDimension { index, eigenvalue, dim } => {
                write!(f, "eigenvalue {eigenvalue} (index {index}) has eigenspace of dimension {dim}")
            }
            Witness::MonodromyStep { index, image } => {
                write!(f, "N maps D^({index}) to ")?;
                vec(f, image)?;
                write!(f, ", missing D^({})", index + 1)
            }
            Witness::MonodromyTop { image } => {
                write!(f, "N does not kill the last eigenline: image ")?;
                vec(f, image)
            }
            Witness::Transversality { embedding, index, intersection } => {
                write!(f, "embedding {embedding}: F_{index} meets Fil^phi_{index} in {intersection}")
            }
            Witness::WeightWindow { embedding, lower, upper } => {
                write!(f, "embedding {embedding}: need {upper} > m > {lower}")
            }
            Witness::CyclotomicInvariants { dim } => write!(f, "H^0(W^dual(1)) has dimension {dim}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomOutcome {
    Pass,
    Fail(Witness),
    /// A prerequisite failed, so the condition has no meaning here.
    NotEvaluated(&'static str),
}

impl AxiomOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, AxiomOutcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, AxiomOutcome::Fail(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            AxiomOutcome::Pass => "pass",
            AxiomOutcome::Fail(_) => "fail",
            AxiomOutcome::NotEvaluated(_) => "not_evaluated",
        }
    }
}

/// Global hypotheses read from input and never computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct DeclaredHypotheses {
    pub gb1: bool,
    pub gb2: bool,
    pub gb3: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub m: i64,
    pub outcomes: Vec<(Axiom, AxiomOutcome)>,
    pub declared: DeclaredHypotheses,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|(_, o)| o.is_pass())
    }

    pub fn outcome(&self, axiom: Axiom) -> &AxiomOutcome {
        &self.outcomes.iter().find(|(a, _)| *a == axiom).expect("every axiom is reported").1
    }

    pub fn failed(&self) -> Vec<Axiom> {
        self.outcomes.iter().filter(|(_, o)| o.is_fail()).map(|(a, _)| *a).collect()
    }

    pub fn with_declared(mut self, declared: DeclaredHypotheses) -> Self {
        self.declared = declared;
        self
    }
}

/// Checks the local admissibility conditions for twist `m`.
///
/// Conditions that only make sense once earlier ones hold are reported as
/// [`AxiomOutcome::NotEvaluated`] instead of failing. Malformed input is an
/// error, distinct from any axiom failing.
pub fn validate(module: &FilPhiNModule, m: i64) -> Result<AdmissibilityReport, ModuleError> {
    let n = module.n();
    if n < 2 {
        return Err(ModuleError::TooSmall(n));
    }
    let relation = check_relation(module)?;

    let mut lines = Vec::with_capacity(n);
    let mut eigen = AxiomOutcome::Pass;
    for i in 0..n {
        let eigenvalue = Scalar::int_pow(module.p(), m - i as i64);
        let d = exactlin::eigenspace(module.phi(), &eigenvalue)?;
        if d.dim() != 1 {
            eigen = AxiomOutcome::Fail(Witness::EigenspaceDimension { index: i, eigenvalue, dim: d.dim() });
            break;
        }
        lines.push(d);
    }

    let (monodromy, orthogonality) = if eigen.is_pass() {
        (check_monodromy(module, &lines)?, check_orthogonality(module, &filtration_from_lines(n, &lines))?)
    } else {
        let why = "eigenvalue condition failed";
        (AxiomOutcome::NotEvaluated(why), AxiomOutcome::NotEvaluated(why))
    };

    let window = check_window(module, m);

    let cyclotomic = if !relation.is_pass() {
        AxiomOutcome::NotEvaluated("relation condition failed")
    } else if !eigen.is_pass() {
        AxiomOutcome::NotEvaluated("eigenvalue condition failed")
    } else {
        check_cyclotomic(module, m, &lines)?
    };

    let outcomes =
        Axiom::ALL.into_iter().zip([relation, eigen, monodromy, orthogonality, window, cyclotomic]).collect();
    Ok(AdmissibilityReport { m, outcomes, declared: DeclaredHypotheses::default() })
}

fn check_relation(module: &FilPhiNModule) -> Result<AxiomOutcome, ModuleError> {
    let phi = module.phi();
    let mono = module.mono();
    let lhs = mono.try_mul(phi)?;
    let rhs = phi.try_mul(mono)?.scale(&module.p_scalar());
    let defect = lhs.try_sub(&rhs)?;
    if !defect.is_zero() {
        return Ok(AxiomOutcome::Fail(Witness::RelationDefect(defect)));
    }
    let power = mono.power(module.n() as u32)?;
    if !power.is_zero() {
        return Ok(AxiomOutcome::Fail(Witness::NotNilpotent(power)));
    }
    Ok(AxiomOutcome::Pass)
}

fn check_monodromy(module: &FilPhiNModule, lines: &[Subspace]) -> Result<AxiomOutcome, ModuleError> {
    let n = module.n();
    let basis: Vec<Vec<Scalar>> = lines.iter().map(|l| l.basis()[0].clone()).collect();
    for i in 0..n {
        let image = module.mono().try_apply(&basis[i])?;
        if i + 1 == n {
            if image.iter().any(|x| !x.is_zero()) {
                return Ok(AxiomOutcome::Fail(Witness::MonodromyTop { image }));
            }
        } else {
            let coords = exactlin::solve_in_span(&image, &basis).expect("eigenlines span the space");
            if coords[i + 1].is_zero() {
                return Ok(AxiomOutcome::Fail(Witness::MonodromyStep { index: i, image }));
            }
        }
    }
    Ok(AxiomOutcome::Pass)
}

fn check_orthogonality(module: &FilPhiNModule, fil_phi: &[Subspace]) -> Result<AxiomOutcome, ModuleError> {
    for (embedding, flag) in module.flags().iter().enumerate() {
        for (index, (f, g)) in flag.steps().iter().zip(fil_phi).enumerate() {
            let meet = exactlin::intersect(f, g)?;
            if !meet.is_zero() {
                return Ok(AxiomOutcome::Fail(Witness::Transversality { embedding, index, intersection: meet }));
            }
        }
    }
    Ok(AxiomOutcome::Pass)
}

fn check_window(module: &FilPhiNModule, m: i64) -> AxiomOutcome {
    let n = module.n();
    for (embedding, flag) in module.flags().iter().enumerate() {
        let w = flag.weights();
        let (lower, upper) = (w[n - 2], w[n - 1]);
        if !(upper > m && m > lower) {
            return AxiomOutcome::Fail(Witness::WeightWindow { embedding, lower, upper });
        }
    }
    AxiomOutcome::Pass
}

fn check_cyclotomic(module: &FilPhiNModule, m: i64, lines: &[Subspace]) -> Result<AxiomOutcome, ModuleError> {
    let n = module.n();
    let twisted = module.tate_twist(m);
    let d = filtration_from_lines(n, lines).swap_remove(n - 1);
    if !is_regular(&twisted, &d)? {
        return Ok(AxiomOutcome::NotEvaluated("Fil^phi_{n-1} is not a regular submodule"));
    }
    let w = exceptional_subquotient(&twisted, &d)?;
    let dim = invariants_dim(&w.dual()?.cyclotomic_twist())?;
    if dim == 0 {
        Ok(AxiomOutcome::Pass)
    } else {
        Ok(AxiomOutcome::Fail(Witness::CyclotomicInvariants { dim }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phinmod::WeightedFlag;
    use alloc::vec;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn fix_a() -> FilPhiNModule {
        let flag =
            WeightedFlag::from_generators(2, &[vec![s(1), s(0)], vec![s(1), Scalar::from_frac(-7, 3)]], vec![0, 2])
                .unwrap();
        FilPhiNModule::new(
            5,
            Matrix::diagonal(&[s(5), s(1)]),
            Matrix::from_int_rows(&[&[0, 0], &[1, 0]]),
            vec![flag],
            0,
        )
        .unwrap()
    }

    #[test]
    fn fix_a_is_admissible() {
        let r = validate(&fix_a(), 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.declared, DeclaredHypotheses::default());
    }

    #[test]
    fn broken_relation_reports_difference() {
        let mut phi = fix_a().phi().clone();
        phi[(0, 1)] = s(1);
        let r = validate(&fix_a().with_phi(phi).unwrap(), 1).unwrap();
        match r.outcome(Axiom::Relation) {
            AxiomOutcome::Fail(Witness::RelationDefect(d)) => assert!(!d.is_zero()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn flag_on_eigenline_breaks_orthogonality() {
        let m = fix_a();
        let flag = WeightedFlag::from_generators(2, &[vec![s(1), s(0)], vec![s(0), s(1)]], vec![0, 2]).unwrap();
        let r = validate(&m.with_flag(0, flag).unwrap(), 1).unwrap();
        assert_eq!(r.failed(), vec![Axiom::Orthogonality]);
    }

    #[test]
    fn one_dimensional_input_is_an_error() {
        let line =
            FilPhiNModule::new(5, Matrix::identity(1), Matrix::zeros(1, 1), vec![WeightedFlag::line(0)], 0).unwrap();
        assert_eq!(validate(&line, 0), Err(ModuleError::TooSmall(1)));
    }
}
