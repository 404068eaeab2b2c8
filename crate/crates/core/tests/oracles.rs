//! Worked examples with hand-derived values.

use linv_core::exactlin::{self, Matrix, Scalar, Subspace};
use linv_core::instancegen::{fix_a, fix_a_degenerate, fix_b, set_flag_step, set_phi_entry};
use linv_core::linvariants::{
    self, extension_invariant, fm_invariant, fm_operator, gb_global, gb_local, gb_ses, step1_class, w_tilde, LError,
};
use linv_core::phinmod::{self, validate, Axiom, FilPhiNModule, ModuleError, RankOneData, WeightedFlag, Witness};
use linv_core::sscoh::{self, CohError};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn q(a: i64, b: i64) -> Scalar {
    Scalar::from_frac(a, b)
}

fn v(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| s(x)).collect()
}

fn span(n: usize, vs: &[&[i64]]) -> Subspace {
    Subspace::span(n, &vs.iter().map(|x| v(x)).collect::<Vec<_>>()).unwrap()
}

fn twisted(entry: &(FilPhiNModule, i64)) -> FilPhiNModule {
    entry.0.tate_twist(entry.1)
}

// exactlin

#[test]
fn kernel_examples() {
    assert!(exactlin::kernel(&Matrix::identity(2)).is_zero());
    assert!(exactlin::kernel(&Matrix::zeros(2, 2)).is_full());
    let k = exactlin::kernel(&Matrix::from_int_rows(&[&[1, 2]]));
    assert_eq!(k.dim(), 1);
    assert_eq!(k.basis()[0], vec![s(1), q(-1, 2)]);
}

#[test]
fn lattice_examples() {
    let e1 = span(2, &[&[1, 0]]);
    let e2 = span(2, &[&[0, 1]]);
    assert!(exactlin::sum(&e1, &e2).unwrap().is_full());
    assert!(exactlin::intersect(&e1, &e2).unwrap().is_zero());
    let (a, _) = fix_a();
    assert!(exactlin::preimage(a.mono(), &e2).unwrap().is_full());
}

#[test]
fn eigenspace_examples() {
    let d = Matrix::diagonal(&[s(5), s(1)]);
    assert_eq!(exactlin::eigenspace(&d, &s(5)).unwrap(), span(2, &[&[1, 0]]));
    assert!(exactlin::eigenspace(&d, &s(2)).unwrap().is_zero());
    assert_eq!(exactlin::eigenspace(&d, &s(1)).unwrap(), span(2, &[&[0, 1]]));
}

#[test]
fn solve_in_span_examples() {
    let gens = vec![v(&[1, 0]), v(&[0, 1])];
    assert_eq!(exactlin::solve_in_span(&v(&[0, 0]), &gens).unwrap(), v(&[0, 0]));
    assert_eq!(exactlin::solve_in_span(&v(&[1, 1]), &gens).unwrap(), v(&[1, 1]));
    let g1 = v(&[1, 2, 3]);
    let g2 = v(&[0, 1, -1]);
    let target: Vec<Scalar> = g1.iter().zip(&g2).map(|(a, b)| &(a * &q(7, 3)) - b).collect();
    assert_eq!(exactlin::solve_in_span(&target, &[g1, g2]).unwrap(), vec![q(7, 3), s(-1)]);
}

// phinmod

#[test]
fn validate_examples() {
    let (a, m) = fix_a();
    assert!(validate(&a, m).unwrap().passed());

    let broken = set_phi_entry(&a, 0, 1, s(1)).unwrap();
    let r = validate(&broken, m).unwrap();
    assert!(matches!(r.outcome(Axiom::Relation), phinmod::AxiomOutcome::Fail(Witness::RelationDefect(_))));

    let flag_on_v1 = set_flag_step(&a, 0, 1, &[v(&[0, 1])]).unwrap();
    let r = validate(&flag_on_v1, m).unwrap();
    assert!(matches!(
        r.outcome(Axiom::Orthogonality),
        phinmod::AxiomOutcome::Fail(Witness::Transversality { index: 1, .. })
    ));
}

#[test]
fn eigenspace_decomposition_examples() {
    let (a, m) = fix_a();
    assert_eq!(phinmod::eigenspace_decomposition(&a, m).unwrap(), vec![span(2, &[&[1, 0]]), span(2, &[&[0, 1]])]);
    let (b, m) = fix_b();
    let lines = phinmod::eigenspace_decomposition(&b, m).unwrap();
    assert_eq!(lines, (0..3).map(|i| Subspace::coordinate(3, &[i])).collect::<Vec<_>>());

    let repeated = a.with_phi(Matrix::diagonal(&[s(5), s(5)])).unwrap();
    assert!(matches!(
        phinmod::eigenspace_decomposition(&repeated, 1),
        Err(ModuleError::EigenspaceDimension { dim: 2, .. })
    ));
}

#[test]
fn frobenius_filtration_examples() {
    let (a, m) = fix_a();
    assert_eq!(
        phinmod::frobenius_filtration(&a, m).unwrap(),
        vec![Subspace::zero(2), span(2, &[&[0, 1]]), Subspace::full(2)]
    );
    let (b, m) = fix_b();
    assert_eq!(
        phinmod::frobenius_filtration(&b, m).unwrap(),
        vec![Subspace::zero(3), span(3, &[&[0, 0, 1]]), span(3, &[&[0, 1, 0], &[0, 0, 1]]), Subspace::full(3)]
    );
}

#[test]
fn tate_twist_examples() {
    let (a, _) = fix_a();
    assert_eq!(a.tate_twist(0), a);
    let t = a.tate_twist(1);
    assert_eq!(t.phi(), &Matrix::diagonal(&[s(1), q(1, 5)]));
    assert_eq!(t.flag(0).weights(), &[-1, 1]);
}

#[test]
fn rank_one_examples() {
    let cyc = FilPhiNModule::rank_one(&RankOneData::cyclotomic(2), 7).unwrap();
    assert_eq!(cyc.phi(), &Matrix::diagonal(&[q(1, 7)]));
    assert!(cyc.flags().iter().all(|f| f.weights() == [-1]));

    let triv = FilPhiNModule::rank_one(&RankOneData::trivial(1), 7).unwrap();
    assert_eq!(triv.phi(), &Matrix::identity(1));
    assert!(triv.mono().is_zero());
    assert_eq!(triv.flag(0).weights(), &[0]);

    // δ'_1 for FIX-B: a = m - k_2 = 1, b = 1.
    let d1 = FilPhiNModule::rank_one(&RankOneData::new(vec![1], 1), 3).unwrap();
    assert_eq!(d1.phi(), &Matrix::diagonal(&[q(1, 3)]));
    assert_eq!(d1.flag(0).weights(), &[-1]);
}

#[test]
fn gb_filtration_examples() {
    let a = fix_a();
    let t = twisted(&a);
    let d = span(2, &[&[0, 1]]);
    let five = phinmod::gb_filtration(&t, &d).unwrap();
    let expected = [Subspace::zero(2), Subspace::zero(2), d.clone(), Subspace::full(2), Subspace::full(2)];
    for (i, e) in (-2..=2).zip(expected.iter()) {
        assert_eq!(five.get(i), e, "D_{i}");
    }
    assert!(matches!(phinmod::gb_filtration(&t, &Subspace::zero(2)), Err(ModuleError::NotRegular(_))));
}

#[test]
fn exceptional_subquotient_examples() {
    let a = fix_a();
    let w = phinmod::exceptional_subquotient(&twisted(&a), &span(2, &[&[0, 1]])).unwrap();
    assert_eq!(w.n(), 2);
    assert_eq!(w.phi(), &Matrix::diagonal(&[s(1), q(1, 5)]));
    assert_eq!(w.mono().rank(), 1);

    let b = fix_b();
    let d = span(3, &[&[0, 1, 0], &[0, 0, 1]]);
    let w = phinmod::exceptional_subquotient(&twisted(&b), &d).unwrap();
    assert_eq!(w.n(), 2);
    assert_eq!(w.phi(), &Matrix::diagonal(&[s(1), q(1, 3)]));
}

#[test]
fn w_ranks_examples() {
    let a = fix_a();
    let r = phinmod::w_ranks(&twisted(&a), &span(2, &[&[0, 1]])).unwrap();
    assert_eq!(r.as_tuple(), (0, 0, 1, 1));
    assert!(!r.degenerate);

    let d = fix_a_degenerate();
    let r = phinmod::w_ranks(&twisted(&d), &span(2, &[&[0, 1]])).unwrap();
    assert!(r.degenerate);
}

// sscoh

#[test]
fn trivial_character_has_one_dimensional_h0() {
    let triv = FilPhiNModule::rank_one(&RankOneData::trivial(1), 5).unwrap();
    let st = sscoh::build_st(&triv).unwrap();
    assert_eq!(st.h(0).dim, 1);
}

#[test]
fn delta_one_complex_shape() {
    let d1 = FilPhiNModule::rank_one(&RankOneData::new(vec![2], 1), 5).unwrap();
    let st = sscoh::build_st(&d1).unwrap();
    assert_eq!(st.complex.dims(), &[1, 3, 1]);
    assert!(st.complex.differential(1).unwrap().is_zero());
    assert_eq!(st.h(1).dim, 2);
    let (alpha, beta) = sscoh::alpha_beta(&d1).unwrap();
    assert!(st.complex.independent(1, &[alpha.representative, beta.representative]));
}

#[test]
fn alpha_beta_outside_family_is_rejected() {
    let triv = FilPhiNModule::rank_one(&RankOneData::trivial(1), 5).unwrap();
    assert!(matches!(sscoh::alpha_beta(&triv), Err(CohError::BetaNotCocycle | CohError::DependentClasses)));
}

#[test]
fn fix_a_w_tilde_complex() {
    let (a, m) = fix_a();
    let wt = w_tilde(&a, m).unwrap();
    assert_eq!(wt.mid, a);
    let st = sscoh::build_st(&wt.mid).unwrap();
    assert!(st.complex.square_defect().is_none());
    assert_eq!(st.complex.euler_characteristic(), st.expected_euler());
}

#[test]
fn fix_a_connecting_map_coordinates() {
    let a = fix_a();
    let ses = gb_ses(&a.0, a.1).unwrap();
    let dmap = ses.connecting().unwrap();
    assert_eq!(dmap.images.len(), 1);
    let (alpha, beta) = sscoh::alpha_beta(&ses.sub).unwrap();
    let c = dmap
        .sub
        .complex
        .class_coordinates(1, &dmap.images[0].representative, &[alpha.representative, beta.representative])
        .unwrap();
    assert_eq!(c, vec![q(7, 3), s(-1)]);
}

// linvariants

#[test]
fn fm_invariant_examples() {
    let (a, m) = fix_a();
    assert_eq!(fm_invariant(&a, m).unwrap(), q(7, 3));
    let (b, m) = fix_b();
    assert_eq!(fm_invariant(&b, m).unwrap(), s(-2));
    // The free parameter only touches the v_2 component.
    let flag = WeightedFlag::from_generators(3, &[v(&[0, 0, 0]), v(&[0, 1, 1]), v(&[1, 2, 5])], vec![0, 1, 4]).unwrap();
    let other_c = b.with_flag(0, flag).unwrap();
    assert_eq!(fm_invariant(&other_c, m).unwrap(), s(-2));
    let (d, m) = fix_a_degenerate();
    assert!(fm_invariant(&d, m).unwrap().is_zero());
}

#[test]
fn fm_operator_examples() {
    let (a, m) = fix_a();
    assert_eq!(fm_operator(&a, m, 1).unwrap(), q(7, 3));
    let (b, m) = fix_b();
    // F_1 / F_2 is spanned by v_1 + v_2 = v_1 - (-1) v_2.
    assert_eq!(fm_operator(&b, m, 2).unwrap(), s(-1));
    assert!(matches!(fm_operator(&b, m, 0), Err(LError::OperatorIndex { .. })));
    assert!(matches!(fm_operator(&b, m, 3), Err(LError::OperatorIndex { .. })));
}

#[test]
fn w_tilde_examples() {
    let (b, m) = fix_b();
    let wt = w_tilde(&b, m).unwrap();
    assert_eq!(wt.mid.n(), 2);
    assert_eq!(wt.sub.phi(), &Matrix::diagonal(&[s(3)]));
    assert_eq!(wt.sub.flag(0).weights(), &[1]);
    assert_eq!(wt.quot.phi(), &Matrix::diagonal(&[s(9)]));
    assert_eq!(wt.quot.flag(0).weights(), &[4]);
}

#[test]
fn step1_examples() {
    let (a, m) = fix_a();
    let r = step1_class(&a, m, &q(7, 3)).unwrap();
    assert!(r.matches);
    assert_eq!(r.representative, vec![q(-7, 3), s(0), s(1)]);
    let (b, m) = fix_b();
    let r = step1_class(&b, m, &s(-2)).unwrap();
    assert!(r.matches);
    assert_eq!(r.representative, vec![s(2), s(0), s(1)]);
    let (d, m) = fix_a_degenerate();
    let r = step1_class(&d, m, &s(0)).unwrap();
    assert!(r.matches);
    assert_eq!(r.representative, vec![s(0), s(0), s(1)]);
}

#[test]
fn gb_examples() {
    let a = fix_a();
    let b = fix_b();
    assert_eq!(gb_local(&a.0, a.1).unwrap(), q(-7, 3));
    assert_eq!(gb_local(&b.0, b.1).unwrap(), s(2));
    assert_eq!(extension_invariant(&gb_ses(&a.0, a.1).unwrap()).unwrap(), q(-7, 3));
    assert_eq!(gb_global(std::slice::from_ref(&a)).unwrap(), q(-7, 3));
    assert_eq!(gb_global(&[]), Err(LError::EmptyInput));
    // Different twists are not a single global input.
    assert_eq!(gb_global(&[a, b]), Err(LError::MixedTwist));
}

#[test]
fn compare_examples() {
    let a = fix_a();
    let r = linvariants::compare(std::slice::from_ref(&a)).unwrap();
    assert!(r.equal);
    assert_eq!(r.l_gb, q(-7, 3));
    let r = linvariants::compare(&[a, fix_b()]).unwrap();
    assert!(r.equal);
    assert_eq!((r.l_gb, r.product), (q(-14, 3), q(-14, 3)));
}
