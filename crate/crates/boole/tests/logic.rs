use std::collections::BTreeSet;

use boole::builtin::{logic_text, names, LOGICS};
use boole::logic::{
    enumerate_colorings, enumerate_states, parity_certificate, parse_logic, partition_logic, unseparated_pairs,
    Coloring, Logic,
};
use proptest::prelude::*;

mod common;
use common::brute_force_states;

fn builtin(name: &str) -> Logic {
    parse_logic(logic_text(name).unwrap()).unwrap()
}

fn brute_force_colorings(l: &Logic, k: usize) -> usize {
    let n = l.atom_count();
    let total = k.pow(n as u32);
    (0..total)
        .filter(|&mut_code| {
            let mut code = mut_code;
            let colors: Vec<usize> = (0..n)
                .map(|_| {
                    let c = code % k;
                    code /= k;
                    c
                })
                .collect();
            Coloring { colors, k }.is_admissible(l)
        })
        .count()
}

#[test]
fn state_counts() {
    for (name, count) in [("firefly", 5), ("pentagon", 11), ("specker-bug", 14), ("cabello18", 0)] {
        assert_eq!(enumerate_states(&builtin(name)).len(), count, "{name}");
    }
}

#[test]
fn cabello_has_a_parity_certificate() {
    let c = parity_certificate(&builtin("cabello18")).unwrap();
    assert_eq!(c.context_count, 9);
    assert!(c.atom_context_counts.iter().all(|&k| k == 2));
    assert!(parity_certificate(&builtin("pentagon")).is_none());
}

#[test]
fn states_agree_with_brute_force_on_small_builtins() {
    let mut checked = 0;
    for name in names(LOGICS) {
        let l = builtin(name);
        if l.atom_count() > 20 {
            continue;
        }
        assert_eq!(enumerate_states(&l), brute_force_states(&l), "{name}");
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn gamma1_true_implies_true() {
    // Whenever a1 is true so is b1, in every state of the faithful diagram.
    let l = builtin("gamma1");
    let states = enumerate_states(&l);
    assert_eq!(states, brute_force_states(&l));
    let (a1, b1) = (l.atom_index("a1").unwrap(), l.atom_index("b1").unwrap());
    assert!(states.iter().any(|s| s.get(a1)));
    assert!(states.iter().all(|s| !s.get(a1) || s.get(b1)));
}

#[test]
fn gamma3_does_not_separate() {
    let l = builtin("gamma3");
    let pairs = unseparated_pairs(&l, &enumerate_states(&l));
    let named: BTreeSet<(&str, &str)> = pairs.iter().map(|&(x, y)| (l.atom_name(x), l.atom_name(y))).collect();
    assert!(named.contains(&("a1", "b1")));
    assert!(named.contains(&("a7", "b7")));
    assert!(unseparated_pairs(&builtin("pentagon"), &enumerate_states(&builtin("pentagon"))).is_empty());
}

#[test]
fn gamma3_tkadlec_colorings_identify_a7_and_b7() {
    let l = builtin("gamma3-tkadlec");
    let cs = enumerate_colorings(&l, 3, false).unwrap();
    assert!(!cs.is_empty());
    let (a7, b7) = (l.atom_index("a7").unwrap(), l.atom_index("b7").unwrap());
    assert!(cs.iter().all(|c| c.colors[a7] == c.colors[b7]));
    assert!(cs.iter().all(|c| c.is_admissible(&l)));
    let reps = enumerate_colorings(&l, 3, true).unwrap();
    assert_eq!(reps.len() * 6, cs.len());
}

#[test]
fn colorings_agree_with_brute_force() {
    for name in ["firefly", "pentagon", "two-var", "three-var"] {
        let l = builtin(name);
        assert_eq!(enumerate_colorings(&l, 3, false).unwrap().len(), brute_force_colorings(&l, 3), "{name}");
    }
    let one = parse_logic("context a b c").unwrap();
    assert_eq!(enumerate_colorings(&one, 3, false).unwrap().len(), 6);
}

#[test]
fn partition_logic_of_the_pentagon() {
    let l = builtin("pentagon");
    let states = enumerate_states(&l);
    let p = partition_logic(&states, &l).unwrap();
    // Each context partitions the 11 state indices.
    for ci in 0..l.contexts.len() {
        let blocks = p.context_partition(&l, ci);
        let mut all: Vec<usize> = blocks.concat();
        all.sort();
        assert_eq!(all, (1..=11).collect::<Vec<_>>());
    }
}

/// Random logics: `n` atoms and up to 8 contexts of 2–4 distinct atoms.
fn random_logic() -> impl Strategy<Value = Logic> {
    (3usize..=14).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 2..=4), 1..=8).prop_filter_map(
            "duplicate contexts",
            move |ctxs| {
                let distinct: BTreeSet<_> = ctxs.iter().collect();
                if distinct.len() != ctxs.len() {
                    return None;
                }
                let named: Vec<Vec<String>> =
                    ctxs.iter().map(|c| c.iter().map(|a| format!("x{a}")).collect()).collect();
                Logic::from_contexts("random", &named).ok()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn states_match_brute_force(l in random_logic()) {
        let states = enumerate_states(&l);
        prop_assert_eq!(&states, &brute_force_states(&l));
        prop_assert!(states.iter().all(|s| s.is_admissible(&l)));
        if parity_certificate(&l).is_some() {
            prop_assert!(states.is_empty());
        }
    }

    #[test]
    fn unseparated_pairs_are_exactly_the_equal_columns(l in random_logic()) {
        let states = enumerate_states(&l);
        let pairs: BTreeSet<(usize, usize)> = unseparated_pairs(&l, &states).into_iter().collect();
        let n = l.atom_count();
        for x in 0..n {
            for y in x + 1..n {
                let same = states.iter().all(|s| s.get(x) == s.get(y));
                prop_assert_eq!(pairs.contains(&(x, y)), same);
            }
        }
    }

    #[test]
    fn text_round_trip(l in random_logic()) {
        let back = parse_logic(&l.to_text()).unwrap();
        prop_assert_eq!(back.contexts, l.contexts);
        prop_assert_eq!(back.atoms, l.atoms);
    }
}
