//! Every catalog scenario end to end: vertices regenerated from the logic
//! agree with the bundled vertex lists, and their hulls with the golden rows.

use std::collections::BTreeSet;

use boole::builtin::terms_text;
use boole::hull::rat::{int, Rat};
use boole::hull::{hull, vertices, Constraint, HRep, VRep};
use boole::logic::Logic;
use boole::vertex_gen::{
    builtin_logic, builtin_scenario, gen_noncontextual_vertices, gen_state_vertices, parse_terms, scenario_names,
    TermTable, VertexSource, NONCONTEXTUAL_ATOM_LIMIT,
};

fn table(logic: &Logic, name: &str) -> TermTable {
    parse_terms(terms_text(name).unwrap(), logic).unwrap()
}

fn point_set(v: &VRep) -> BTreeSet<Vec<Rat>> {
    v.points.iter().cloned().collect()
}

fn ints(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| int(x)).collect()
}

/// `b + Σ c·term ≥ 0` over the labelled columns of `t`.
fn row(t: &TermTable, b: i64, coeffs: &[(&str, i64)]) -> Constraint {
    let mut a = vec![int(0); t.terms.len()];
    for (label, c) in coeffs {
        let i = t.labels().iter().position(|l| l == label).unwrap_or_else(|| panic!("no column {label}"));
        a[i] = int(*c);
    }
    Constraint::new(int(b), a)
}

fn has(h: &HRep, c: &Constraint) -> bool {
    h.inequalities.contains(c)
}

#[test]
fn generated_vertices_match_bundled_lists() {
    for name in scenario_names() {
        let s = builtin_scenario(&name).unwrap();
        if s.ext.is_none() {
            continue;
        }
        let bundled = s.vertices().unwrap();
        let generated = s.generate().unwrap();
        assert_eq!(point_set(&generated), point_set(&bundled), "{name}");
    }
}

#[test]
fn every_scenario_reproduces_its_golden_rows() {
    for name in scenario_names() {
        let s = builtin_scenario(&name).unwrap();
        let h = hull(&s.generate().unwrap()).unwrap();
        let check = s.check(&h);
        assert!(check.passed(), "{name}\n{check}");
    }
}

#[test]
fn golden_row_counts() {
    let counts = [
        ("bwf-2x2", 24, 0),
        ("chsh-2x2", 16, 0),
        ("pentagon-prob", 11, 5),
        ("pentagon-pair-expect-kcbs", 11, 0),
        ("pentagon-all-pair-expect", 11, 35),
        ("bug-prob", 16, 7),
        ("bug-edge-expect", 17, 1),
        ("cabello-contextual", 274, 0),
    ];
    for (name, ineq, lin) in counts {
        let g = builtin_scenario(name).unwrap().golden;
        assert_eq!((g.inequalities.len(), g.linearities.len()), (ineq, lin), "{name}");
    }
}

#[test]
fn epr_two_by_three_counts() {
    for (name, n) in [("epr-2x3-full", 684), ("epr-2x3-joints", 90)] {
        let s = builtin_scenario(name).unwrap();
        assert_eq!(s.facets, Some(n));
        let h = hull(&s.generate().unwrap()).unwrap();
        assert_eq!(h.inequalities.len(), n, "{name}");
    }
}

#[test]
fn table_rows_of_individual_states() {
    let l = builtin_logic("epr-2x2").unwrap();
    let v = gen_state_vertices(&l, &table(&l, "bwf")).unwrap();
    assert_eq!(v.points.len(), 16);
    assert!(point_set(&v).contains(&ints(&[0, 1, 0, 1, 0, 0, 0, 1])));

    let v = gen_state_vertices(&l, &table(&l, "chsh-expect")).unwrap();
    assert!(point_set(&v).contains(&ints(&[1, 1, 1, 1])));
    assert_eq!(point_set(&v).len(), 8);

    let p = builtin_logic("pentagon").unwrap();
    let v = gen_state_vertices(&p, &table(&p, "pentagon-prob")).unwrap();
    assert_eq!(v.points.len(), 11);
    assert!(point_set(&v).contains(&ints(&[1, 0, 0, 1, 0, 1, 0, 1, 0, 0])));
}

#[test]
fn expectations_are_affine_images_of_probabilities() {
    for (logic, prob, expect) in [
        ("one-var", "one-var-prob", "one-var-expect"),
        ("two-var", "two-var-prob", "two-var-expect"),
        ("three-var", "three-var-prob", "three-var-expect"),
    ] {
        let l = builtin_logic(logic).unwrap();
        let (tp, te) = (table(&l, prob), table(&l, expect));
        let vp = gen_state_vertices(&l, &tp).unwrap();
        let ve = gen_state_vertices(&l, &te).unwrap();
        for (p, e) in vp.points.iter().zip(&ve.points) {
            for (k, t) in te.terms.iter().enumerate() {
                if t.atoms.len() == 1 {
                    let j = tp.terms.iter().position(|s| s.atoms == t.atoms).unwrap();
                    assert_eq!(e[k], int(2) * &p[j] - int(1), "{logic}");
                }
            }
        }
    }
}

#[test]
fn named_inequalities() {
    let p = builtin_logic("pentagon").unwrap();

    let t = table(&p, "kcbs");
    let h = hull(&gen_state_vertices(&p, &t).unwrap()).unwrap();
    assert!(has(&h, &row(&t, 3, &[("E13", 1), ("E35", 1), ("E57", 1), ("E79", 1), ("E91", 1)])));

    let t = table(&p, "bub-stairs");
    let h = hull(&gen_state_vertices(&p, &t).unwrap()).unwrap();
    assert!(has(&h, &row(&t, 2, &[("p1", -1), ("p3", -1), ("p5", -1), ("p7", -1), ("p9", -1)])));

    let t = table(&p, "pentagon-nonintertwining");
    let h = hull(&gen_state_vertices(&p, &t).unwrap()).unwrap();
    assert!(has(&h, &row(&t, -1, &[("p2", 1), ("p4", 1), ("p6", 1), ("p8", 1), ("p10", 1)])));

    let b = builtin_logic("specker-bug").unwrap();
    let t = table(&b, "bug-edge-expect");
    let h = hull(&gen_state_vertices(&b, &t).unwrap()).unwrap();
    // E13 + E57 + E9,11 ≤ E35 + E79 + E11,1 is tight on every state: it is
    // the polytope's single equation.
    assert_eq!(
        h.linearities,
        vec![row(&t, 0, &[("E1E3", 1), ("E5E7", 1), ("E9E11", 1), ("E3E5", -1), ("E7E9", -1), ("E11E1", -1)])]
    );

    let l = builtin_logic("epr-2x3").unwrap();
    let t = table(&l, "epr-2x3-joints");
    let h = hull(&gen_state_vertices(&l, &t).unwrap()).unwrap();
    assert!(has(&h, &row(&t, 2, &[("E25", -1), ("E26", -1), ("E35", -1), ("E36", 1)])));
}

#[test]
fn noncontextual_vertex_counts_and_cubes() {
    for (name, points, facets) in [("pentagon", 32, 10), ("specker-bug", 128, 14), ("cabello18", 256, 274)] {
        let l = builtin_logic(name).unwrap();
        let v = gen_noncontextual_vertices(&l, NONCONTEXTUAL_ATOM_LIMIT).unwrap();
        assert_eq!(v.points.len(), points, "{name}");
        assert_eq!(v.dim, l.contexts.len());
        let h = hull(&v).unwrap();
        assert_eq!(h.inequalities.len(), facets, "{name}");
        assert!(h.linearities.is_empty());
    }
}

#[test]
fn cabello_bounds() {
    let l = builtin_logic("cabello18").unwrap();
    let h = hull(&gen_noncontextual_vertices(&l, NONCONTEXTUAL_ATOM_LIMIT).unwrap()).unwrap();
    let r = |signs: &[i64]| Constraint::new(int(7), ints(signs));
    // E1 + 7 ≥ E2 + ... + E9, and the same with pairs of terms flipped over.
    assert!(has(&h, &r(&[1, -1, -1, -1, -1, -1, -1, -1, -1])));
    assert!(has(&h, &r(&[1, -1, -1, -1, -1, -1, -1, 1, 1])));
    assert!(has(&h, &r(&[1, -1, -1, -1, -1, 1, 1, 1, 1])));
    assert!(has(&h, &r(&[1, -1, -1, 1, 1, 1, 1, 1, 1])));
    assert!(has(&h, &r(&[1, 1, 1, 1, 1, 1, 1, 1, 1])));
    assert!(has(&h, &Constraint::new(int(1), ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0]))));
    assert!(has(&h, &Constraint::new(int(1), ints(&[-1, 0, 0, 0, 0, 0, 0, 0, 0]))));
    let back = vertices(&h).unwrap();
    assert_eq!(back.points.len(), 256);
}

#[test]
fn sources_name_real_logics() {
    for name in scenario_names() {
        match builtin_scenario(&name).unwrap().source {
            VertexSource::States { logic, terms } => {
                let l = builtin_logic(&logic).unwrap();
                parse_terms(terms_text(&terms).unwrap(), &l).unwrap();
            }
            VertexSource::Noncontextual { logic } => {
                builtin_logic(&logic).unwrap();
            }
        }
    }
}
