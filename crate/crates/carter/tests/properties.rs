mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn reflection_is_involutive_isometry(t in type_strategy(), i in 0usize..240, j in 0usize..240, k in 0usize..240) {
        prop_reflection(t, i, j, k)?;
    }

    #[test]
    fn roots_closed_under_negation(t in type_strategy(), i in 0usize..240) {
        prop_negation(t, i)?;
    }

    #[test]
    fn similarity_keeps_validity(idx in 0usize..64, flips in proptest::collection::vec(any::<bool>(), 10), edge in 0usize..16) {
        prop_validation(idx, flips, edge)?;
    }

    #[test]
    fn documents_round_trip(idx in 0usize..64, flips in proptest::collection::vec(any::<bool>(), 10)) {
        prop_json_round_trip(idx, flips)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn char_poly_is_a_class_function(t in small_type_strategy(), word in proptest::collection::vec(0usize..8, 1..40)) {
        prop_char_poly(t, word)?;
    }
}

#[test]
fn root_counts_match_formulas() {
    for t in TYPES {
        assert_eq!(system(t).roots().len(), expected_root_count(t), "{t}");
    }
}

#[test]
fn every_root_negates_exhaustively() {
    for t in TYPES {
        let amb = system(t);
        assert!(amb.roots().iter().all(|r| amb.contains(&r.neg())), "{t}");
    }
}

#[test]
fn weyl_orders_by_enumeration() {
    for (t, order) in [("A3", 24), ("D4", 192), ("A5", 720), ("D5", 1920)] {
        assert_eq!(weyl_group(system(t)).len(), order, "{t}");
    }
}
