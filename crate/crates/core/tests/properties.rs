//! Algebraic invariants over random inputs.

use linv_core::exactlin::{self, Matrix, Scalar, Subspace};
use linv_core::instancegen::{generate, random_change_of_basis, Basis, GenSpec};
use linv_core::linvariants::{
    default_v0, fm_invariant, fm_invariant_with, fm_operator, fm_operators, gb_local, step1_class,
};
use linv_core::phinmod::{self, validate};
use linv_core::sscoh;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=4).prop_map(|(a, b)| Scalar::from_frac(a, b))
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(scalar(), r * c).prop_map(move |e| Matrix::from_entries(r, c, e).unwrap())
    })
}

fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    proptest::collection::vec(proptest::collection::vec(scalar(), n), 0..=n)
        .prop_map(move |vs| Subspace::span(n, &vs).unwrap())
}

fn spec() -> impl Strategy<Value = GenSpec> {
    (
        prop::sample::select(vec![2u64, 3, 5, 7]),
        2usize..=4,
        -1i64..=2,
        1usize..=2,
        (1i64..=9, 1i64..=5, prop::bool::ANY),
        any::<u64>(),
        proptest::collection::vec((1i64..=2, 1i64..=2, 0i64..=1), 2),
    )
        .prop_map(|(p, n, m, e, (num, den, neg), seed, offsets)| {
            let weights = offsets[..e]
                .iter()
                .map(|&(up, down, step)| {
                    let mut k = vec![0; n];
                    k[n - 1] = m + up;
                    k[n - 2] = m - down;
                    for i in (0..n - 2).rev() {
                        k[i] = k[i + 1] - step;
                    }
                    k
                })
                .collect();
            let l = Scalar::from_frac(if neg { -num } else { num }, den);
            GenSpec { p, n, m, weights, planted_l: l, allow_degenerate: false, seed, basis: Basis::Seeded }
        })
}

fn all_values(module: &phinmod::FilPhiNModule, m: i64) -> (Scalar, Vec<Vec<Scalar>>, Scalar) {
    (fm_invariant(module, m).unwrap(), fm_operators(module, m).unwrap(), gb_local(module, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix(4)) {
        prop_assert_eq!(exactlin::kernel(&m).dim() + m.rank(), m.cols());
        prop_assert_eq!(exactlin::image(&m).dim(), m.rank());
    }

    #[test]
    fn rref_is_idempotent(m in matrix(4)) {
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(rr, r);
        prop_assert_eq!(pivots2, pivots);
    }

    #[test]
    fn preimage_of_image_is_everything(m in matrix(4)) {
        let img = exactlin::image(&m);
        prop_assert!(exactlin::preimage(&m, &img).unwrap().is_full());
        prop_assert_eq!(exactlin::preimage(&m, &Subspace::zero(m.rows())).unwrap(), exactlin::kernel(&m));
    }

    #[test]
    fn lattice_dimension_formula(u in subspace(4), v in subspace(4)) {
        let s = exactlin::sum(&u, &v).unwrap();
        let i = exactlin::intersect(&u, &v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&v));
        prop_assert!(u.is_subspace_of(&s) && v.is_subspace_of(&s));
    }

    #[test]
    fn annihilator_is_an_involution(u in subspace(4)) {
        let a = u.annihilator();
        prop_assert_eq!(a.dim() + u.dim(), 4);
        prop_assert_eq!(a.annihilator(), u);
    }

    #[test]
    fn solve_recovers_coefficients(c in proptest::collection::vec(scalar(), 3)) {
        let gens = vec![
            vec![Scalar::one(), Scalar::from_int(2), Scalar::zero(), Scalar::from_int(-1)],
            vec![Scalar::zero(), Scalar::one(), Scalar::from_int(3), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::from_int(5)],
        ];
        let target: Vec<Scalar> = (0..4)
            .map(|j| gens.iter().zip(&c).map(|(g, x)| &g[j] * x).sum())
            .collect();
        prop_assert_eq!(exactlin::solve_in_span(&target, &gens).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_modules_are_admissible_with_planted_l(s in spec()) {
        let module = generate(&s).unwrap();
        prop_assert!(validate(&module, s.m).unwrap().passed());
        prop_assert_eq!(fm_invariant(&module, s.m).unwrap(), s.planted_l.clone());
        prop_assert_eq!(fm_operator(&module, s.m, 1).unwrap(), s.planted_l);
    }

    #[test]
    fn two_paths_agree(s in spec()) {
        let module = generate(&s).unwrap();
        let l = fm_invariant(&module, s.m).unwrap();
        prop_assert_eq!(gb_local(&module, s.m).unwrap(), -&l);
        prop_assert!(step1_class(&module, s.m, &l).unwrap().matches);
    }

    #[test]
    fn dual_is_an_involution(s in spec()) {
        let module = generate(&s).unwrap();
        let back = module.dual().unwrap().dual().unwrap();
        prop_assert_eq!(back, module.clone());
        let twisted = module.tate_twist(s.m);
        prop_assert_eq!(twisted.tate_twist(-s.m), module);
    }

    #[test]
    fn semistable_complexes_are_complexes(s in spec()) {
        let module = generate(&s).unwrap();
        for t in [0, s.m, s.m + 1] {
            let st = sscoh::build_st(&module.tate_twist(t)).unwrap();
            prop_assert!(st.complex.square_defect().is_none());
            prop_assert_eq!(st.complex.euler_characteristic(), st.expected_euler());
        }
    }

    #[test]
    fn values_are_basis_invariant(s in spec(), g_seed in any::<u64>()) {
        let module = generate(&s).unwrap();
        let g = random_change_of_basis(module.n(), g_seed).unwrap();
        let moved = module.transform(&g).unwrap();
        prop_assert_eq!(all_values(&moved, s.m), all_values(&module, s.m));
    }

    #[test]
    fn fm_is_scale_invariant(s in spec(), c in scalar().prop_filter("nonzero", |c| !c.is_zero())) {
        let module = generate(&s).unwrap();
        let v0: Vec<Scalar> = default_v0(&module, s.m).unwrap().iter().map(|x| x * &c).collect();
        prop_assert_eq!(fm_invariant_with(&module, s.m, &v0).unwrap(), s.planted_l);
    }

    #[test]
    fn generation_is_deterministic(s in spec()) {
        prop_assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
    }
}
