use proptest::prelude::*;

use halftwist_core::covers::{self, CoverSpec};
use halftwist_core::jacobian::{eigenspace_dims, hypersurface_hodge_numbers, primitive_rank};
use halftwist_core::{Dim, HodgeStructure, Matching};

fn cover() -> impl Strategy<Value = CoverSpec> {
    (3u32..=9, 1u32..=6).prop_map(|(d, k)| CoverSpec::new(d, k).unwrap())
}

fn symmetric(h: &HodgeStructure) -> bool {
    let field = h.field();
    h.entries().all(|(p, a, dim)| p <= h.weight() && h.get(h.weight() - p, field.negate(a)) == *dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenspace_rows_sum_to_hodge_numbers(s in cover()) {
        let table = eigenspace_dims(s.d, s.k).unwrap();
        let rows = table.hodge_numbers();
        for (p, h) in hypersurface_hodge_numbers(s.d, s.k) {
            prop_assert_eq!(&rows[p as usize], &h);
        }
    }

    #[test]
    fn operations_preserve_symmetry(s in cover(), m in -2i32..=0) {
        let v = covers::primitive_v(s);
        prop_assert!(symmetric(&v));
        prop_assert!(symmetric(&v.tate_twist(m).unwrap()));
        prop_assert!(symmetric(&v.neg_half_twist().unwrap()));
        if let Ok(half) = v.pos_half_twist() {
            prop_assert!(symmetric(&half));
        }
        let k = HodgeStructure::k_minus_half(v.field());
        prop_assert!(symmetric(&v.tensor(&k).unwrap()));
        prop_assert!(symmetric(&v.tensor_graded(&k).unwrap().matched(Matching::Conjugate)));
        prop_assert!(symmetric(&covers::build_w(s)));
    }

    #[test]
    fn tensor_unit_law(s in cover()) {
        let v = covers::full_primitive(s);
        let unit = HodgeStructure::tensor_unit(v.field());
        prop_assert_eq!(v.tensor(&unit).unwrap(), v);
    }

    #[test]
    fn secondary_parts_partition_the_primitive_rank(s in cover()) {
        let total: Dim = covers::secondary_parts(s).into_iter().map(|(_, part)| part.rank()).sum();
        prop_assert_eq!(total, primitive_rank(s.d, s.k));
    }

    #[test]
    fn half_twist_tracks_direct_predicate(s in cover(), tate in any::<bool>()) {
        prop_assert_eq!(covers::half_twist(s, tate).is_ok(), covers::half_twist_exists_direct(s, tate));
    }

    #[test]
    fn ks_space_rank_equals_rank_v(s in cover()) {
        prop_assert_eq!(covers::ks_invariant_space(s).rank(), covers::primitive_v(s).rank());
    }

    #[test]
    fn w_rank_from_euler_recursion(s in cover()) {
        let expected = Dim::from(s.d - 2) * covers::euler_recursion_rank(s.d, s.k);
        prop_assert_eq!(covers::build_w(s).rank(), expected);
    }

    #[test]
    fn corollary_inclusion(s in cover()) {
        prop_assert_ne!(covers::corollary_inclusion_holds(s), Some(false));
    }
}
