use isotypic::cayley::{self, CayleyMatrix, DeterminantAlgorithm, Variant};
use isotypic::groups::abelian_groups_up_to;
use isotypic::molien::{self, GroupSource};
use isotypic::numtheory::{euler_phi, multinomial, ramanujan_sum};
use isotypic::permanent::PermanentAlgorithm;
use isotypic::polynom::apply_group_action;
use isotypic::{BigInt, FiniteAbelianGroup};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fredman_reciprocity(n in 1u64..40, m in 1u64..40, i in -50i64..50) {
        prop_assert_eq!(molien::a_coeff(n, m, i).unwrap(), molien::a_coeff(m, n, i).unwrap());
    }

    #[test]
    fn bigraded_reciprocity(p in 0u64..12, q in 0u64..12, m in 0u64..12, i in 0i64..30) {
        prop_assume!(q + m > 0 && p + m > 0);
        prop_assert_eq!(
            molien::dim_sym_wedge(q + m, p, m, i).unwrap(),
            molien::dim_sym_wedge(p + m, q, m, i).unwrap()
        );
    }

    #[test]
    fn ramanujan_sum_is_periodic_and_even(n in 1u64..300, i in -600i64..600) {
        let c = ramanujan_sum(n, i).unwrap();
        prop_assert_eq!(&c, &ramanujan_sum(n, i + n as i64).unwrap());
        prop_assert_eq!(&c, &ramanujan_sum(n, -i).unwrap());
        prop_assert!(c.magnitude() <= euler_phi(n).unwrap().magnitude());
    }

    #[test]
    fn multinomial_ignores_part_order(mut parts in proptest::collection::vec(0u64..8, 1..5), seed in any::<u64>()) {
        let a = multinomial(&parts).unwrap();
        let k = parts.len();
        parts.rotate_left((seed as usize) % k);
        parts.reverse();
        prop_assert_eq!(a, multinomial(&parts).unwrap());
    }

    #[test]
    fn ext_total_is_sum_of_b_column(n in 1u64..30, i in 0i64..30) {
        let sum: BigInt = (0..=n).map(|m| molien::b_coeff(n, m, i).unwrap()).sum();
        prop_assert_eq!(molien::ext_total_dim(n, i).unwrap(), sum);
    }
}

#[test]
fn leibniz_and_ryser_agree_on_every_variant() {
    for g in abelian_groups_up_to(5) {
        let n = g.order();
        let mut tables = vec![
            CayleyMatrix::build(&g, Variant::Plain, None).unwrap(),
            CayleyMatrix::build(&g, Variant::Hat, None).unwrap(),
            CayleyMatrix::build(&g, Variant::Extended, None).unwrap(),
            CayleyMatrix::build(&g, Variant::Block2n, None).unwrap(),
        ];
        if g.has_single_factor() {
            for l in n..=7 {
                tables.push(CayleyMatrix::build(&g, Variant::Toeplitz, Some(l)).unwrap());
            }
        }
        for t in tables.into_iter().filter(|t| t.size <= 7) {
            let a = cayley::permanent(&t, PermanentAlgorithm::Leibniz).unwrap();
            let b = cayley::permanent(&t, PermanentAlgorithm::Ryser).unwrap();
            assert_eq!(a, b, "{g} {} size {}", t.variant, t.size);
            let fact: BigInt = (1..=t.size as u64).map(BigInt::from).product();
            assert_eq!(a.coefficient_sum(), fact);
        }
    }
}

#[test]
fn determinant_paths_agree_up_to_order_six() {
    for g in abelian_groups_up_to(6) {
        let t = CayleyMatrix::build(&g, Variant::Plain, None).unwrap();
        let a = cayley::determinant(&t, &g, DeterminantAlgorithm::Leibniz).unwrap();
        let b = cayley::determinant(&t, &g, DeterminantAlgorithm::Factored).unwrap();
        assert_eq!(a, b, "{g}");
        let hat = CayleyMatrix::build(&g, Variant::Hat, None).unwrap();
        let h = cayley::determinant(&hat, &g, DeterminantAlgorithm::Leibniz).unwrap();
        assert!(h == a || h == a.neg());
        assert_eq!(cayley::permanent_auto(&hat).unwrap(), cayley::permanent_auto(&t).unwrap());
    }
}

#[test]
fn group_action_composes() {
    for g in abelian_groups_up_to(6) {
        let per = cayley::permanent_auto(&CayleyMatrix::build(&g, Variant::Extended, None).unwrap()).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.add(&a, &b).unwrap();
                let twice = apply_group_action(&g, &b, &apply_group_action(&g, &a, &per).unwrap()).unwrap();
                assert_eq!(twice, apply_group_action(&g, &ab, &per).unwrap());
            }
        }
    }
}

#[test]
fn p_count_is_invariant_dimension() {
    for g in abelian_groups_up_to(8) {
        let n = g.order();
        let s = molien::sym_series(GroupSource::Group(&g), 0, n).unwrap();
        assert_eq!(cayley::p_count(&g).unwrap(), s.integer_coeffs().unwrap()[n], "{g}");
    }
}

#[test]
fn d_never_exceeds_p() {
    for g in abelian_groups_up_to(8) {
        assert!(cayley::d_count(&g).unwrap() <= cayley::p_count(&g).unwrap());
    }
    // prime-power cyclic groups have no cancellation
    for n in [2u64, 3, 4, 5, 7, 8] {
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        assert_eq!(cayley::d_count(&g).unwrap(), cayley::p_count(&g).unwrap(), "C{n}");
    }
}
