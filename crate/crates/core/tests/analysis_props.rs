mod common;

use aspsc_core::classify;
use aspsc_core::supercoherence::is_super_coherent;
use common::strategy::{bounds, program};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn stratified_programs_are_super_coherent(p in program(bounds(5, 6).constraints())) {
        let class = classify(&p);
        if class.is_stratified || class.is_odd_cycle_free {
            prop_assert!(is_super_coherent(&p).unwrap().holds);
        }
    }

    #[test]
    fn class_inclusions(p in program(bounds(5, 6).constraints())) {
        let c = classify(&p);
        prop_assert!(!c.is_stratified || c.is_odd_cycle_free);
        prop_assert!(!c.is_definite_horn || (c.is_positive && c.is_normal));
        prop_assert!(!c.is_normal || c.is_head_cycle_free);
        prop_assert!(!c.is_positive || p.has_constraints() || c.is_stratified);
    }
}
