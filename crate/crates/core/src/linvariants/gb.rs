//! The Greenberg–Benois side: five-step filtration, exceptional
//! subquotient and the connecting map of its rank-one presentation.

use alloc::vec::Vec;

use super::LError;
use crate::exactlin::{self, Matrix, Scalar, Subspace};
use crate::phinmod::{self, FilPhiNModule, RankOneData};
use crate::sscoh::{self, CohClass, ConnectingMap};

/// A short exact sequence `0 → sub → mid → quot → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ses {
    pub sub: FilPhiNModule,
    pub mid: FilPhiNModule,
    pub quot: FilPhiNModule,
    pub incl: Matrix,
    pub proj: Matrix,
}

impl Ses {
    /// Presents `mid` as an extension of `mid / line` by `line`.
    pub fn from_line(mid: &FilPhiNModule, line: &Subspace) -> Result<Self, LError> {
        Ok(Ses {
            sub: mid.submodule(line)?,
            mid: mid.clone(),
            quot: mid.quotient(line)?,
            incl: line.basis_matrix(),
            proj: line.quotient_map(),
        })
    }

    pub fn connecting(&self) -> Result<ConnectingMap, LError> {
        Ok(sscoh::connecting(&self.sub, &self.mid, &self.quot, &self.incl, &self.proj)?)
    }
}

fn line_of(module: &FilPhiNModule, eigenvalue: &Scalar) -> Result<Subspace, LError> {
    let line = exactlin::eigenspace(module.phi(), eigenvalue)?;
    if line.dim() != 1 {
        return Err(LError::NotALine(line.dim()));
    }
    Ok(line)
}

/// `W` for the twist `M(m)` and the regular submodule `Fil^φ_{n-1}`.
pub fn exceptional_w(module: &FilPhiNModule, m: i64) -> Result<FilPhiNModule, LError> {
    let twisted = module.tate_twist(m);
    let fil = phinmod::frobenius_filtration(&twisted, 0)?;
    let d = &fil[twisted.n() - 1];
    Ok(phinmod::exceptional_subquotient(&twisted, d)?)
}

/// `W` as an extension of its φ-fixed quotient by its `p^{-1}` line.
pub fn gb_ses(module: &FilPhiNModule, m: i64) -> Result<Ses, LError> {
    let w = exceptional_w(module, m)?;
    let line = line_of(&w, &Scalar::int_pow(w.p(), -1))?;
    Ses::from_line(&w, &line)
}

/// The boundary of the single generator of `H^0(quot)`, rescaled so that
/// its monodromy slot is the basis vector of `sub` (i.e. the generator
/// lifts to `v_0` with `N v_0 = v_1`).
fn normalized_boundary(dmap: &ConnectingMap) -> Result<CohClass, LError> {
    if dmap.images.len() != 1 {
        return Err(LError::UnexpectedH0(dmap.images.len()));
    }
    let rep = &dmap.images[0].representative;
    let (_, _, c) = dmap.sub.layout.split(rep);
    let scale = c[0].recip().ok_or(LError::BNotInvertible)?;
    Ok(CohClass { degree: 1, representative: rep.iter().map(|x| x * &scale).collect() })
}

/// `L = a/b` where `∂(v_η) = a α* + b β*` for the single generator `v_η` of
/// `H^0(quot)`; the sub must be rank one with Frobenius `p^{-1}`.
pub fn extension_invariant(ses: &Ses) -> Result<Scalar, LError> {
    extension_invariant_scaled(ses, &Scalar::one(), &Scalar::one())
}

/// As [`extension_invariant`], with `v_η` scaled by `source` and the basis
/// vector of the sub scaled by `target`.
pub fn extension_invariant_scaled(ses: &Ses, source: &Scalar, target: &Scalar) -> Result<Scalar, LError> {
    let dmap = ses.connecting()?;
    if dmap.images.len() != 1 {
        return Err(LError::UnexpectedH0(dmap.images.len()));
    }
    let (alpha, beta) = sscoh::alpha_beta_scaled(&ses.sub, target)?;
    let boundary = dmap.apply(core::slice::from_ref(source));
    let c = dmap
        .sub
        .complex
        .class_coordinates(1, &boundary.representative, &[alpha.representative, beta.representative])
        .ok_or(LError::NotInSpan)?;
    let b_inv = c[1].recip().ok_or(LError::BNotInvertible)?;
    Ok(&c[0] * b_inv)
}

/// `L(W)` for one prime.
pub fn gb_local(module: &FilPhiNModule, m: i64) -> Result<Scalar, LError> {
    extension_invariant(&gb_ses(module, m)?)
}

/// Product of [`gb_local`] over the primes; all twists must agree.
pub fn gb_global(modules: &[(FilPhiNModule, i64)]) -> Result<Scalar, LError> {
    let (_, m0) = modules.first().ok_or(LError::EmptyInput)?;
    if modules.iter().any(|(_, m)| m != m0) {
        return Err(LError::MixedTwist);
    }
    modules.iter().map(|(module, m)| gb_local(module, *m)).product()
}

/// `W̃ = M / Fil^φ_{n-2}` with its rank-one presentation: sub is the image
/// of `D^{(1)}`, quotient the image of `D^{(0)}`.
pub fn w_tilde(module: &FilPhiNModule, m: i64) -> Result<Ses, LError> {
    let n = module.n();
    let fil = phinmod::frobenius_filtration(module, m)?;
    let wt = module.quotient(&fil[n - 2])?;
    let line = line_of(&wt, &Scalar::int_pow(wt.p(), m - 1))?;
    Ses::from_line(&wt, &line)
}

/// Outcome of the direct extension-class computation for `W̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step1 {
    /// Representative `(a_σ mod Fil^0, (φ-1) v_0, N v_0)` in the middle term
    /// of `C_st` of the sub line, in the basis `v_1 = N v_0`.
    pub representative: Vec<Scalar>,
    /// Representative of `(-L v_1, 0, v_1)` for the supplied `L`.
    pub expected: Vec<Scalar>,
    pub matches: bool,
    /// `c` with `∂_W(v_η) = c · ∂_{W̃}(v_0)` once both generators are
    /// normalised by `N v_0 = v_1`; `None` when no such scalar exists or the
    /// two sub complexes differ.
    pub class_ratio: Option<Scalar>,
}

/// Extension class of `W̃ ⊗ (quotient)^∨`, read off from the vectors
/// `a_σ ∈ sub` with `v_0 + a_σ ∈ Fil^0_σ`, and compared with
/// `(-L v_1, 0, v_1)`.
pub fn step1_class(module: &FilPhiNModule, m: i64, l: &Scalar) -> Result<Step1, LError> {
    let ses = w_tilde(module, m)?;
    let quot_dual = ses.quot.dual()?;
    let normalized = ses.mid.tensor_rank_one(&quot_dual)?;
    let p_inv = Scalar::int_pow(module.p(), -1);
    let line = line_of(&normalized, &p_inv)?;
    let nses = Ses::from_line(&normalized, &line)?;
    let st = sscoh::build_st(&nses.sub)?;

    let fixed = line_of(&normalized, &Scalar::one())?;
    let v0 = fixed.basis()[0].clone();
    let v1 = normalized.mono().try_apply(&v0)?;
    // Coordinates on the sub are measured against v1.
    let v1_coord = line.coordinates(&v1).ok_or(LError::MonodromyVanishes)?;
    let unit = v1_coord[0].recip().ok_or(LError::MonodromyVanishes)?;

    let mut de_rham = Vec::with_capacity(normalized.e());
    for sigma in 0..normalized.e() {
        let fil0 = normalized.fil0(sigma);
        let mut gens = fil0.basis().to_vec();
        gens.push(v1.clone());
        let c = exactlin::solve_in_span(&v0, &gens).ok_or(LError::DegenerateProjection { embedding: sigma })?;
        // v0 = f + c_last v1, so a = -c_last v1.
        let t = -c.last().expect("v1 coefficient");
        de_rham.push(st.quotients[sigma].try_apply(&[t])?);
    }
    let phi_part = normalized.phi().shifted(&Scalar::one())?.try_apply(&v0)?;
    let phi_coord = line.coordinates(&phi_part).ok_or(LError::NotInSpan)?;
    let representative = st.layout.join(&de_rham, &[&phi_coord[0] * &unit], &[&v1_coord[0] * &unit]);

    let neg_l = -l;
    let expected_de_rham: Vec<Vec<Scalar>> =
        st.quotients.iter().map(|q| q.try_apply(core::slice::from_ref(&neg_l))).collect::<Result<_, _>>()?;
    let expected = st.layout.join(&expected_de_rham, &[Scalar::zero()], &[Scalar::one()]);
    let matches = st.complex.is_cocycle(1, &representative) && st.complex.same_class(1, &representative, &expected);

    let class_ratio = class_ratio(module, m, &nses)?;
    Ok(Step1 { representative, expected, matches, class_ratio })
}

fn class_ratio(module: &FilPhiNModule, m: i64, tilde: &Ses) -> Result<Option<Scalar>, LError> {
    let w = gb_ses(module, m)?;
    let dw = normalized_boundary(&w.connecting()?)?;
    let dt = normalized_boundary(&tilde.connecting()?)?;
    let cw = sscoh::build_st(&w.sub)?;
    let ct = sscoh::build_st(&tilde.sub)?;
    if cw.complex != ct.complex {
        return Ok(None);
    }
    Ok(cw.complex.class_coordinates(1, &dw.representative, &[dt.representative]).map(|c| c[0].clone()))
}

/// The rank-one data of the two ends of `W̃` predicted by the triangulation:
/// `(sub, quot)` with norm exponents `-(m-1)`, `-m` and exponents `-k_{σ,n-1}`,
/// `-k_{σ,n}`.
pub fn w_tilde_end_data(module: &FilPhiNModule, m: i64) -> (RankOneData, RankOneData) {
    let n = module.n();
    let ks = |i: usize| module.flags().iter().map(|f| -f.weights()[i]).collect();
    (RankOneData::new(ks(n - 2), -(m - 1)), RankOneData::new(ks(n - 1), -m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instancegen::{fix_a, fix_b};
    use crate::phinmod::WeightedFlag;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn fixture_values() {
        let (a, ma) = fix_a();
        assert_eq!(gb_local(&a, ma).unwrap(), Scalar::from_frac(-7, 3));
        let (b, mb) = fix_b();
        assert_eq!(gb_local(&b, mb).unwrap(), s(2));
        assert_eq!(gb_global(&[(a.clone(), ma)]).unwrap(), Scalar::from_frac(-7, 3));
        assert_eq!(gb_global(&[]), Err(LError::EmptyInput));
        assert_eq!(gb_global(&[(a, ma), (b, mb)]), Err(LError::MixedTwist));
    }

    #[test]
    fn split_extension_has_no_invariant() {
        let flag =
            WeightedFlag::from_generators(2, &[alloc::vec![s(1), s(0)], alloc::vec![s(1), s(0)]], alloc::vec![-1, 1])
                .unwrap();
        let w = FilPhiNModule::new(
            5,
            Matrix::diagonal(&[s(1), Scalar::from_frac(1, 5)]),
            Matrix::zeros(2, 2),
            alloc::vec![flag],
            0,
        )
        .unwrap();
        let ses = Ses::from_line(&w, &Subspace::coordinate(2, &[1])).unwrap();
        let dmap = ses.connecting().unwrap();
        assert!(dmap.sub.complex.is_coboundary(1, &dmap.images[0].representative));
        assert_eq!(extension_invariant(&ses), Err(LError::BNotInvertible));
    }

    #[test]
    fn w_tilde_ends() {
        let (a, ma) = fix_a();
        let ses = w_tilde(&a, ma).unwrap();
        assert_eq!(ses.mid, a);
        let (b, mb) = fix_b();
        let ses = w_tilde(&b, mb).unwrap();
        let (sub, quot) = w_tilde_end_data(&b, mb);
        assert_eq!(ses.sub, FilPhiNModule::rank_one(&sub, 3).unwrap());
        assert_eq!(ses.quot, FilPhiNModule::rank_one(&quot, 3).unwrap());
    }

    #[test]
    fn step1_on_fixtures() {
        let (a, ma) = fix_a();
        let r = step1_class(&a, ma, &Scalar::from_frac(7, 3)).unwrap();
        assert!(r.matches);
        assert_eq!(r.representative, alloc::vec![Scalar::from_frac(-7, 3), s(0), s(1)]);
        assert_eq!(r.class_ratio, Some(s(1)));
        assert!(!step1_class(&a, ma, &s(2)).unwrap().matches);
        let (b, mb) = fix_b();
        let r = step1_class(&b, mb, &s(-2)).unwrap();
        assert!(r.matches);
        assert_eq!(r.representative, alloc::vec![s(2), s(0), s(1)]);
    }

    #[test]
    fn boundary_scaling_leaves_ratio() {
        let (b, mb) = fix_b();
        let ses = gb_ses(&b, mb).unwrap();
        let l = extension_invariant_scaled(&ses, &Scalar::from_frac(3, 4), &Scalar::from_int(-6)).unwrap();
        assert_eq!(l, s(2));
    }
}
