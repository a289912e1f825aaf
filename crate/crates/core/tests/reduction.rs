use proptest::prelude::*;

use polysched_core::convert::dps_to_ops;
use polysched_core::instances::{gen_random_cnf, gen_satisfiable_cnf};
use polysched_core::rational::ratio;
use polysched_core::reduction::{
    build_polycule, check_structure, is_slot_respecting, parse_dimacs, witness_schedule, GadgetTag,
};
use polysched_core::schedule::validate_dps;

const WORKED: &str = "c worked example\np cnf 3 4\n1 2 0\n-1 0\n1 -2 3 0\n-3 0\n";

#[test]
fn worked_example_structure() {
    let phi = parse_dimacs(WORKED).unwrap();
    assert!(phi.brute_force_solve().is_none());
    let g = build_polycule(&phi).unwrap();
    let r = check_structure(&g);
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.max_frequency, Some(12));
    assert_eq!(g.count_where(|t| matches!(t, GadgetTag::Or(_))), 4);
}

#[test]
fn growth_range_of_polycules() {
    for seed in 0..10 {
        let phi = gen_random_cnf(seed, 4, 1 + seed as usize).unwrap();
        let ops = dps_to_ops(&build_polycule(&phi).unwrap().dps);
        assert_eq!(ops.max_growth(), Some(&ratio(1, 3)));
        assert_eq!(ops.growth().iter().min(), Some(&ratio(1, 12)));
    }
}

#[test]
fn build_is_deterministic() {
    let phi = gen_random_cnf(11, 5, 7).unwrap();
    assert_eq!(build_polycule(&phi).unwrap(), build_polycule(&phi).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn witnesses_validate(seed in any::<u64>(), n in 1usize..7, m in 1usize..9) {
        let (phi, a) = gen_satisfiable_cnf(seed, n, m).unwrap();
        let g = build_polycule(&phi).unwrap();
        prop_assert!(check_structure(&g).passed());
        let s = witness_schedule(&g, &a).unwrap();
        prop_assert_eq!(s.period(), 36);
        prop_assert!(validate_dps(&s, &g.dps).is_empty());
        prop_assert!(is_slot_respecting(&g, &s));
    }
}
