//! Every bundled realization against its logic, and clique derivation
//! against a brute-force subset search.

use std::collections::BTreeSet;

use boole::builtin::{logic_text, vector_text};
use boole::logic::{parse_logic, Logic};
use boole::realization::{derive_logic, parse_vectors, verify_realization, Realization};

const PAIRS: &[(&str, &str)] = &[
    ("pentagon", "pentagon"),
    ("pentagon", "pentagon-quartic"),
    ("specker-bug", "specker-bug"),
    ("gamma1", "gamma1"),
    ("gamma3", "gamma3"),
    ("gamma3-tkadlec", "gamma3"),
    ("cabello18", "cabello18"),
    ("yu-oh", "yu-oh-full"),
];

fn logic(name: &str) -> Logic {
    parse_logic(logic_text(name).unwrap()).unwrap()
}

fn vectors(name: &str) -> Realization {
    parse_vectors(vector_text(name).unwrap()).unwrap()
}

fn context_names(l: &Logic) -> BTreeSet<BTreeSet<String>> {
    l.contexts
        .iter()
        .map(|c| c.atoms.iter().map(|&a| l.atom_name(a).to_string()).collect())
        .collect()
}

#[test]
fn bundled_realizations_verify() {
    for &(l, v) in PAIRS {
        let report = verify_realization(&logic(l), &vectors(v), 1e-10).unwrap();
        assert!(report.passed(), "{l} / {v}:\n{report}");
        assert!(report.size_warnings.is_empty(), "{l} / {v}:\n{report}");
    }
}

#[test]
fn rational_realizations_verify_exactly() {
    for (l, v) in [("pentagon", "pentagon"), ("cabello18", "cabello18"), ("yu-oh", "yu-oh-full")] {
        let real = vectors(v);
        assert!(real.is_exact(), "{v}");
        let report = verify_realization(&logic(l), &real, 0.0).unwrap();
        assert!(report.exact && report.passed(), "{l}:\n{report}");
    }
}

#[test]
fn derived_logics_contain_the_diagram() {
    for &(l, v) in PAIRS {
        let want = context_names(&logic(l));
        let got = context_names(&derive_logic(l, &vectors(v), 1e-10).unwrap());
        assert!(want.is_subset(&got), "{l}: missing {:?}", want.difference(&got).collect::<Vec<_>>());
    }
}

#[test]
fn tkadlec_context_appears_only_in_the_derived_logic() {
    let extra: BTreeSet<String> = ["a13", "c", "b13"].iter().map(|s| s.to_string()).collect();
    assert!(!context_names(&logic("gamma3")).contains(&extra));
    assert!(context_names(&derive_logic("g", &vectors("gamma3"), 1e-10).unwrap()).contains(&extra));
}

#[test]
fn cabello_vectors_give_nine_bases() {
    // Some vectors are orthogonal without sharing a basis (a2 ⟂ a15), so the
    // graph also has smaller maximal cliques; the complete bases are exactly
    // the nine contexts.
    let l = derive_logic("c", &vectors("cabello18"), 0.0).unwrap();
    let mut bases = l.clone();
    bases.contexts.retain(|c| c.atoms.len() == 4);
    assert_eq!(bases.contexts.len(), 9);
    assert_eq!(context_names(&bases), context_names(&logic("cabello18")));
    assert!(l.contexts.iter().all(|c| c.atoms.len() <= 4));
    assert_eq!(context_names(&l), brute_force_cliques(&vectors("cabello18")));
}

/// Maximal sets of pairwise orthogonal vectors, by checking every subset.
fn brute_force_cliques(real: &Realization) -> BTreeSet<BTreeSet<String>> {
    let xs: Vec<Vec<f64>> = real.vectors.iter().map(|v| v.to_f64()).collect();
    let n = xs.len();
    let orth = |i: usize, j: usize| xs[i].iter().zip(&xs[j]).map(|(a, b)| a * b).sum::<f64>().abs() < 1e-9;
    let is_clique = |m: u32| {
        (0..n).all(|i| m >> i & 1 == 0 || (i + 1..n).all(|j| m >> j & 1 == 0 || orth(i, j)))
    };
    let mut out = BTreeSet::new();
    for m in 1u32..(1 << n) {
        if m.count_ones() < 2 || !is_clique(m) {
            continue;
        }
        if (0..n).any(|k| m >> k & 1 == 0 && is_clique(m | 1 << k)) {
            continue;
        }
        out.insert((0..n).filter(|i| m >> i & 1 == 1).map(|i| real.vectors[i].name.clone()).collect());
    }
    out
}

#[test]
fn yu_oh_cliques_match_subset_search() {
    let real = vectors("yu-oh");
    assert_eq!(real.vectors.len(), 13);
    let want = brute_force_cliques(&real);
    let got = context_names(&derive_logic("y", &real, 1e-10).unwrap());
    assert_eq!(got, want);
    eprintln!("yu-oh: {} contexts", got.len());
}

#[test]
fn pentagon_cliques_match_subset_search() {
    let real = vectors("pentagon");
    assert_eq!(context_names(&derive_logic("p", &real, 0.0).unwrap()), brute_force_cliques(&real));
}
