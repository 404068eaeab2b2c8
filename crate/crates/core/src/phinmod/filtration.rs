use alloc::vec::Vec;

use super::{FilPhiNModule, ModuleError};
use crate::exactlin::{self, Scalar, Subspace};
use crate::sscoh;

/// `D^{(i)} = ker(φ - p^{m-i})` for `i = 0..n`, each required to be a line.
pub fn eigenspace_decomposition(module: &FilPhiNModule, m: i64) -> Result<Vec<Subspace>, ModuleError> {
    (0..module.n())
        .map(|i| {
            let eigenvalue = Scalar::int_pow(module.p(), m - i as i64);
            let d = exactlin::eigenspace(module.phi(), &eigenvalue)?;
            if d.dim() != 1 {
                return Err(ModuleError::EigenspaceDimension { index: i, eigenvalue, dim: d.dim() });
            }
            Ok(d)
        })
        .collect()
}

/// `Fil^φ_j = D^{(n-j)} + … + D^{(n-1)}` for `j = 0..=n`.
pub fn frobenius_filtration(module: &FilPhiNModule, m: i64) -> Result<Vec<Subspace>, ModuleError> {
    let lines = eigenspace_decomposition(module, m)?;
    Ok(filtration_from_lines(module.n(), &lines))
}

pub(crate) fn filtration_from_lines(n: usize, lines: &[Subspace]) -> Vec<Subspace> {
    let mut out = alloc::vec![Subspace::zero(n)];
    for j in 1..=n {
        let prev = out.last().expect("nonempty");
        out.push(exactlin::sum(prev, &lines[n - j]).expect("same ambient"));
    }
    out
}

/// A (φ,N)-stable `D` complementary to `Fil^0` at every embedding.
pub fn is_regular(module: &FilPhiNModule, d: &Subspace) -> Result<bool, ModuleError> {
    if !module.is_stable(d)? {
        return Ok(false);
    }
    for sigma in 0..module.e() {
        let fil0 = module.fil0(sigma);
        if d.dim() + fil0.dim() != module.n() || !exactlin::intersect(d, fil0)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The five subspaces `D_{-2} ⊂ D_{-1} ⊂ D_0 ⊂ D_1 ⊂ D_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveStep {
    pub steps: [Subspace; 5],
}

impl FiveStep {
    /// `D_i` for `i ∈ -2..=2`.
    pub fn get(&self, i: i32) -> &Subspace {
        &self.steps[(i + 2) as usize]
    }
}

/// Five-step filtration attached to a regular submodule `D` of an already
/// twisted module:
///
/// ```text
/// D_{-1} = (1 - p^{-1} φ^{-1}) D + N(D ∩ ker(φ - 1))
/// D_1    = D + (ker(φ - 1) ∩ N^{-1}(D ∩ ker(φ - p^{-1})))
/// ```
pub fn gb_filtration(twisted: &FilPhiNModule, d: &Subspace) -> Result<FiveStep, ModuleError> {
    if d.ambient() != twisted.n() {
        return Err(ModuleError::AmbientMismatch { expected: twisted.n(), got: d.ambient() });
    }
    if d.is_zero() {
        return Err(ModuleError::NotRegular("zero subspace"));
    }
    if !twisted.is_stable(d)? {
        return Err(ModuleError::NotRegular("not stable under Frobenius and monodromy"));
    }
    if !is_regular(twisted, d)? {
        return Err(ModuleError::NotRegular("not complementary to Fil^0"));
    }
    let n = twisted.n();
    let phi = twisted.phi();
    let mono = twisted.mono();
    let p_inv = Scalar::int_pow(twisted.p(), -1);
    let phi_inv = phi.inverse().ok_or(ModuleError::NotInvertible)?;

    let shrink = crate::exactlin::Matrix::identity(n).try_sub(&phi_inv.scale(&p_inv))?;
    let fixed = exactlin::eigenspace(phi, &Scalar::one())?;
    let d_fixed = exactlin::intersect(d, &fixed)?;
    let d_minus1 = exactlin::sum(&d.map(&shrink)?, &d_fixed.map(mono)?)?;

    let d_tate = exactlin::intersect(d, &exactlin::eigenspace(phi, &p_inv)?)?;
    let extra = exactlin::intersect(&fixed, &exactlin::preimage(mono, &d_tate)?)?;
    let d_1 = exactlin::sum(d, &extra)?;

    Ok(FiveStep { steps: [Subspace::zero(n), d_minus1, d.clone(), d_1, Subspace::full(n)] })
}

/// `W = D_1 / D_{-1}` with induced φ, N and flags.
pub fn exceptional_subquotient(twisted: &FilPhiNModule, d: &Subspace) -> Result<FilPhiNModule, ModuleError> {
    let five = gb_filtration(twisted, d)?;
    let top = five.get(1);
    let upper = twisted.submodule(top)?;
    let bottom = five.get(-1).in_coordinates_of(top).ok_or(ModuleError::InducedFlag)?;
    upper.quotient(&bottom)
}

/// Ranks of `W_0`, `W_1`, `M_0`, `M_1` in the decomposition of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WRanks {
    pub w0: usize,
    pub w1: usize,
    pub m0: usize,
    pub m1: usize,
    /// The φ-fixed line of `W` lies in `Fil^0` at every embedding.
    pub degenerate: bool,
}

impl WRanks {
    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.w0, self.w1, self.m0, self.m1)
    }
}

/// `rank W_0 = dim H^0(W^∨(1))`, `rank W_1 = dim H^0(W)`, and the remainder
/// split evenly between `M_0` and `M_1`.
pub fn w_ranks(twisted: &FilPhiNModule, d: &Subspace) -> Result<WRanks, ModuleError> {
    let w = exceptional_subquotient(twisted, d)?;
    let w0 = invariants_dim(&w.dual()?.cyclotomic_twist())?;
    let w1 = invariants_dim(&w)?;
    let dim = w.n();
    let rest = dim.checked_sub(w0 + w1).filter(|r| r % 2 == 0).ok_or(ModuleError::RankParity { dim, w0, w1 })?;
    let fixed = exactlin::eigenspace(w.phi(), &Scalar::one())?;
    let mut degenerate = !fixed.is_zero();
    for sigma in 0..w.e() {
        degenerate &= fixed.is_subspace_of(w.fil0(sigma));
    }
    Ok(WRanks { w0, w1, m0: rest / 2, m1: rest / 2, degenerate })
}

pub(crate) fn invariants_dim(module: &FilPhiNModule) -> Result<usize, ModuleError> {
    match sscoh::build_st(module) {
        Ok(st) => Ok(st.h(0).dim),
        Err(sscoh::CohError::Module(e)) => Err(e),
        Err(sscoh::CohError::Linear(e)) => Err(e.into()),
        Err(_) => Err(ModuleError::RelationFails),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Matrix;
    use crate::phinmod::WeightedFlag;
    use alloc::vec;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn fix_a(l: Scalar) -> FilPhiNModule {
        let flag = WeightedFlag::from_generators(2, &[vec![s(1), s(0)], vec![s(1), -l]], vec![0, 2]).unwrap();
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
    fn decomposition_of_diagonal_frobenius() {
        let m = fix_a(Scalar::from_frac(7, 3));
        let lines = eigenspace_decomposition(&m, 1).unwrap();
        assert_eq!(lines, vec![Subspace::coordinate(2, &[0]), Subspace::coordinate(2, &[1])]);
        let fil = frobenius_filtration(&m, 1).unwrap();
        assert_eq!(fil, vec![Subspace::zero(2), Subspace::coordinate(2, &[1]), Subspace::full(2)]);
        let repeated = m.with_phi(Matrix::diagonal(&[s(5), s(5)])).unwrap();
        assert!(matches!(
            eigenspace_decomposition(&repeated, 1),
            Err(ModuleError::EigenspaceDimension { index: 0, dim: 2, .. })
        ));
    }

    #[test]
    fn five_step_on_fix_a() {
        let t = fix_a(Scalar::from_frac(7, 3)).tate_twist(1);
        let d = Subspace::coordinate(2, &[1]);
        let five = gb_filtration(&t, &d).unwrap();
        assert!(five.get(-2).is_zero());
        assert!(five.get(-1).is_zero());
        assert_eq!(five.get(0), &d);
        assert!(five.get(1).is_full());
        assert!(five.get(2).is_full());
        assert!(matches!(gb_filtration(&t, &Subspace::zero(2)), Err(ModuleError::NotRegular(_))));
        assert!(matches!(gb_filtration(&t, &Subspace::coordinate(2, &[0])), Err(ModuleError::NotRegular(_))));
    }

    #[test]
    fn exceptional_subquotient_of_fix_a() {
        let t = fix_a(Scalar::from_frac(7, 3)).tate_twist(1);
        let w = exceptional_subquotient(&t, &Subspace::coordinate(2, &[1])).unwrap();
        assert_eq!(w.phi(), &Matrix::diagonal(&[s(1), Scalar::from_frac(1, 5)]));
        assert_eq!(w.mono().rank(), 1);
        let r = w_ranks(&t, &Subspace::coordinate(2, &[1])).unwrap();
        assert_eq!(r.as_tuple(), (0, 0, 1, 1));
        assert!(!r.degenerate);
    }

    #[test]
    fn zero_invariant_is_flagged() {
        let t = fix_a(Scalar::zero()).tate_twist(1);
        let r = w_ranks(&t, &Subspace::coordinate(2, &[1])).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.w0 + r.w1 + r.m0 + r.m1, 2);
    }
}
