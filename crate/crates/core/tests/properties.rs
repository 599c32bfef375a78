use std::sync::Arc;

use nilclean::ideals::{all_ideals, ideal_generated_by, is_ideal};
use nilclean::{BuildContext, FiniteRing};
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = String> {
    prop_oneof![
        (1u64..=24).prop_map(|n| format!("Z{n}")),
        (2u64..=6, 2u64..=6).prop_map(|(a, b)| format!("Z{a} x Z{b}")),
        (2u64..=4).prop_map(|n| format!("T2(Z{n})")),
        Just("T3(Z2)".to_string()),
        (2u64..=8, 1u64..=4).prop_map(|(n, k)| {
            let d = (1..=n).filter(|d| n % d == 0).nth(k as usize % 2).unwrap_or(1);
            format!("Idealization(Z{n}, Z{d})")
        }),
        (2u64..=3).prop_map(|n| format!("Morita(Z{n}, Z{n}, Z{n}, Z{n}, mul)")),
        Just("Quot(T2(Z4); [[0,2],[0,0]])".to_string()),
        Just("Corner(T2(Z2) x Z3; ([[1,0],[0,0]], 1))".to_string()),
    ]
}

fn build(text: &str) -> Arc<FiniteRing> {
    BuildContext::default().build_str(text).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructions_satisfy_ring_axioms(text in spec()) {
        let r = build(&text);
        prop_assert_eq!(r.verify_axioms(), Ok(()));
    }

    #[test]
    fn element_encoding_round_trips(text in spec()) {
        let r = build(&text);
        for x in r.elements() {
            prop_assert_eq!(r.parse_element(&r.display(x)).unwrap(), x);
        }
    }

    #[test]
    fn generated_ideals_are_closed_and_minimal(text in spec(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3)) {
        let r = build(&text);
        let gens: Vec<usize> = picks.iter().map(|i| i.index(r.size())).collect();
        let i = ideal_generated_by(&r, &gens).unwrap();
        prop_assert!(is_ideal(&r, i.members()));
        for g in &gens {
            prop_assert!(i.contains(*g));
        }
        if r.size() <= r.limits().lattice_cap {
            for other in all_ideals(&r).unwrap() {
                if gens.iter().all(|g| other.contains(*g)) {
                    prop_assert!(i.is_subset(&other));
                }
            }
        }
    }

    #[test]
    fn element_sets_match_definitions(text in spec()) {
        let r = build(&text);
        let s = r.element_sets().unwrap();
        let idem: Vec<usize> = r.elements().filter(|&x| r.mul(x, x) == x).collect();
        let nil: Vec<usize> = r.elements().filter(|&x| (1..=r.size() as u64).any(|k| r.pow(x, k) == 0)).collect();
        let units: Vec<usize> = r
            .elements()
            .filter(|&x| r.elements().any(|y| r.mul(x, y) == r.one() && r.mul(y, x) == r.one()))
            .collect();
        prop_assert_eq!(&s.idempotents, &idem);
        prop_assert_eq!(&s.nilpotents, &nil);
        prop_assert_eq!(&s.units, &units);
    }
}
