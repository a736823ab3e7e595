//! Property tests of the exact hull on random 0/1 and ±1 point sets. Such
//! points are vertices of a cube, so every distinct input point is extreme.

use std::collections::BTreeSet;

use boole::hull::{affine_dimension, canonicalize, hull, tight_points, vertices, Constraint, Rat, VRep};
use proptest::prelude::*;

mod common;
use common::brute_force_facets;

fn cube_points(max_dim: usize, max_points: usize, signs: bool) -> impl Strategy<Value = VRep> {
    (2..=max_dim).prop_flat_map(move |d| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), d), 1..=max_points).prop_map(move |pts| {
            let pts: Vec<Vec<i64>> = pts
                .iter()
                .map(|p| p.iter().map(|&b| if signs { if b { 1 } else { -1 } } else { b as i64 }).collect())
                .collect();
            VRep::from_ints(&pts).unwrap()
        })
    })
}

fn any_cube_points(max_dim: usize, max_points: usize) -> impl Strategy<Value = VRep> {
    prop_oneof![cube_points(max_dim, max_points, false), cube_points(max_dim, max_points, true)]
}

fn distinct(v: &VRep) -> BTreeSet<Vec<Rat>> {
    v.points.iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hull_is_sound_and_minimal(v in any_cube_points(8, 14)) {
        let h = hull(&v).unwrap();
        for p in &v.points {
            prop_assert!(h.contains(p));
        }
        let pts = distinct(&v);
        let poly_dim = affine_dimension(&pts.iter().collect::<Vec<_>>());
        prop_assert_eq!(poly_dim, (v.dim - h.linearities.len()) as isize);
        let mut tight_sets = BTreeSet::new();
        for c in &h.inequalities {
            let t = tight_points(&v, c);
            // a proper face of codimension one
            prop_assert!(t.len() < v.points.len());
            prop_assert_eq!(affine_dimension(&t), poly_dim - 1, "{}", c);
            prop_assert!(tight_sets.insert(t.into_iter().cloned().collect::<BTreeSet<_>>()), "repeated face");
        }
        prop_assert_eq!(&canonicalize(&h).unwrap(), &h);
    }

    #[test]
    fn vertices_round_trip(v in any_cube_points(7, 12)) {
        let h = hull(&v).unwrap();
        prop_assume!(!h.inequalities.is_empty());
        let back = vertices(&h).unwrap();
        prop_assert_eq!(distinct(&back), distinct(&v));
        prop_assert_eq!(hull(&back).unwrap(), h);
    }

    #[test]
    fn order_and_duplicates_do_not_matter(v in any_cube_points(8, 12), seed in any::<u64>()) {
        let mut pts = v.points.clone();
        let n = pts.len();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pts.swap(i, (s >> 33) as usize % (i + 1));
        }
        pts.push(pts[0].clone());
        let w = VRep::new(pts).unwrap();
        prop_assert_eq!(hull(&w).unwrap(), hull(&v).unwrap());
    }

    #[test]
    fn facets_match_brute_force(v in any_cube_points(4, 10)) {
        let all = distinct(&v).into_iter().collect::<Vec<_>>();
        prop_assume!(affine_dimension(&all.iter().collect::<Vec<_>>()) == v.dim as isize);
        let w = VRep::new(all).unwrap();
        let h = hull(&w).unwrap();
        prop_assert!(h.linearities.is_empty());
        prop_assert_eq!(h, brute_force_facets(&w));
    }
}

#[test]
fn brute_force_oracle_knows_the_square() {
    let v = VRep::from_ints(&[[0, 0], [1, 0], [0, 1], [1, 1]]).unwrap();
    let h = brute_force_facets(&v);
    let want: Vec<Constraint> =
        [[0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1]].iter().map(|r| Constraint::from_ints(r)).collect();
    assert_eq!(h.inequalities.iter().collect::<BTreeSet<_>>(), want.iter().collect());
}
