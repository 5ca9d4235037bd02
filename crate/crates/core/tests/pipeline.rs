use ait_core::bitio::{is_prefix_free, kraft_sum, BitString, CodeSet, DyadicRational};
use ait_core::complexity::{enumerate_halting, replay_record, ComplexityTable, SweepParams};
use ait_core::machines::{run_c2, MachineId};
use ait_core::omega::{
    omega_exact_capped, omega_lower_bound, oracle_halting_from_omega, OracleOutcome,
    DEFAULT_ORACLE_GUARD,
};
use proptest::prelude::*;

#[test]
fn sd_domain_at_40_bits_is_a_prefix_code() {
    let params = SweepParams::new(MachineId::Sd, 40, 10_000);
    let records = enumerate_halting(&params);
    let mut set = CodeSet::new();
    for r in &records {
        assert!(replay_record(r, params.budget), "{:?}", r.program_bits);
        set.insert(r.program_bits.clone());
    }
    assert!(is_prefix_free(&set).prefix_free);
    let kraft = kraft_sum(&set);
    assert!(kraft <= DyadicRational::one());
    assert_eq!(kraft, omega_lower_bound(&params).unwrap().value);
}

#[test]
fn oracle_beyond_the_trivial_range() {
    let exact = omega_exact_capped(40, 1);
    let direct = enumerate_halting(&SweepParams::new(MachineId::Total, 40, 5));
    for k in [16, 24, 32, 40] {
        let report =
            oracle_halting_from_omega(&exact.bits(k).unwrap(), 40, DEFAULT_ORACLE_GUARD, 1)
                .unwrap();
        let OracleOutcome::Complete { halting, .. } = report.outcome else {
            panic!("k={k} tripped");
        };
        let mut expect: Vec<BitString> = direct
            .iter()
            .filter(|r| r.size_bits <= k)
            .map(|r| r.program_bits.clone())
            .collect();
        expect.sort_by(|a, b| a.shortlex_cmp(b));
        assert_eq!(halting, expect, "k={k}");
    }
}

#[test]
fn wrong_digits_trip_the_oracle() {
    let mut bits: Vec<bool> = omega_exact_capped(40, 1).bits(16).unwrap().iter().collect();
    // raising a digit asks for more mass than the capped ensemble holds
    let i = bits.iter().position(|b| !b).unwrap();
    bits[i] = true;
    let r = oracle_halting_from_omega(&BitString::from_bools(bits), 40, 1_000_000, 1).unwrap();
    assert!(matches!(
        r.outcome,
        OracleOutcome::GuardTripped { resolved: true, .. }
    ));
}

#[test]
fn tables_round_trip_through_json() {
    let t = ComplexityTable::build(&SweepParams::new(MachineId::Total, 40, 5));
    let text = serde_json::to_string(&t).unwrap();
    assert_eq!(serde_json::from_str::<ComplexityTable>(&text).unwrap(), t);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn c2_literal_program_bounds_complexity(x in proptest::collection::vec(any::<bool>(), 0..7)) {
        let x = BitString::from_bools(x);
        let literal = BitString::from_bools(vec![false]).concat(&x);
        prop_assert_eq!(run_c2(&literal, 1).value().cloned(),
            Some(ait_core::sexpr::SExpr::bit_list(&x)));
        let t = ComplexityTable::build(&SweepParams::new(MachineId::C2, x.len() + 1, 100));
        prop_assert!(t.get(&x).unwrap().h_upper <= x.len() + 1);
    }
}
