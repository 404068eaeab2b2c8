//! Hand-checked fixtures.
//!
//! FIX-A: `p = 5`, `n = 2`, `m = 1`, weights `(0, 2)`, `φ = diag(5, 1)`,
//! `N v_0 = v_1`, `F_1 = span(v_0 - 7/3 v_1)`. The invariant is `7/3`.
//!
//! FIX-B: `p = 3`, `n = 3`, `m = 2`, weights `(0, 1, 4)`,
//! `φ = diag(9, 3, 1)`, `N v_0 = v_1`, `N v_1 = v_2`,
//! `F_2 = span(v_0 + 2 v_1 + v_2)`, `F_1 = F_2 + span(v_1 + v_2)`.
//! Projecting `F_2` along `v_2` leaves `v_0 + 2 v_1`, so the invariant is `-2`.

use alloc::vec;

use super::{build_from_eigen_data, Basis, EigenFlag, GenSpec};
use crate::exactlin::{Matrix, Scalar};
use crate::phinmod::FilPhiNModule;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn fix_a_spec() -> GenSpec {
    GenSpec {
        p: 5,
        n: 2,
        m: 1,
        weights: vec![vec![0, 2]],
        planted_l: Scalar::from_frac(7, 3),
        allow_degenerate: false,
        seed: 0,
        basis: Basis::Identity,
    }
}

fn fix_a_with(l: Scalar) -> (FilPhiNModule, i64) {
    let flag = EigenFlag { generators: vec![vec![s(0), s(0)], vec![s(1), -l]], weights: vec![0, 2] };
    (build_from_eigen_data(5, 1, 2, &[flag], &Matrix::identity(2)).expect("fixture is well formed"), 1)
}

/// FIX-A and its twist.
pub fn fix_a() -> (FilPhiNModule, i64) {
    fix_a_with(Scalar::from_frac(7, 3))
}

/// FIX-A with `L = 0`: `F_1 = span(v_0)`.
pub fn fix_a_degenerate() -> (FilPhiNModule, i64) {
    fix_a_with(Scalar::zero())
}

pub fn fix_b_eigen_data() -> EigenFlag {
    EigenFlag {
        generators: vec![vec![s(0), s(0), s(0)], vec![s(0), s(1), s(1)], vec![s(1), s(2), s(1)]],
        weights: vec![0, 1, 4],
    }
}

/// FIX-B and its twist.
pub fn fix_b() -> (FilPhiNModule, i64) {
    (build_from_eigen_data(3, 2, 3, &[fix_b_eigen_data()], &Matrix::identity(3)).expect("fixture is well formed"), 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Subspace;
    use crate::phinmod::{validate, Axiom};

    #[test]
    fn fixtures_validate() {
        for (module, m) in [fix_a(), fix_b(), fix_a_degenerate()] {
            let r = validate(&module, m).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.outcome(Axiom::CyclotomicInvariants).label(), "pass");
        }
    }

    #[test]
    fn fix_b_transcript() {
        let (b, _) = fix_b();
        assert_eq!(b.phi(), &Matrix::diagonal(&[s(9), s(3), s(1)]));
        let f = b.flag(0);
        assert_eq!(f.step(2), &Subspace::span(3, &[vec![s(1), s(2), s(1)]]).unwrap());
        assert_eq!(f.step(1), &Subspace::span(3, &[vec![s(1), s(2), s(1)], vec![s(0), s(1), s(1)]]).unwrap());
    }
}
