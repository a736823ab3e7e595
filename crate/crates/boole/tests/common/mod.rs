//! Brute-force oracles shared by the property tests and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeSet;

use boole::hull::rat::rref;
use boole::hull::{affine_dimension, canonicalize, tight_points, Constraint, HRep, Rat, VRep};
use boole::logic::{Logic, TwoValuedState};
use num_traits::{One, Signed, Zero};

/// Every 0/1 vector with exactly one 1 per context, in increasing bit order.
pub fn brute_force_states(l: &Logic) -> Vec<TwoValuedState> {
    let n = l.atom_count();
    assert!(n <= 20);
    let masks: Vec<u32> = l.contexts.iter().map(|c| c.atoms.iter().map(|&a| 1u32 << a).sum()).collect();
    let mut out: Vec<TwoValuedState> = (0u32..1 << n)
        .filter(|s| masks.iter().all(|m| (s & m).count_ones() == 1))
        .map(|s| TwoValuedState {
            values: (0..n).map(|a| s >> a & 1 == 1).collect(),
        })
        .collect();
    out.sort();
    out
}

/// Facets by brute force: every hyperplane through `dim` affinely independent
/// points that has all points on one side and touches a `dim − 1`
/// dimensional face. Only for full-dimensional sets.
pub fn brute_force_facets(v: &VRep) -> HRep {
    let pts: Vec<&Vec<Rat>> = v.points.iter().collect();
    let d = v.dim;
    let mut found = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let mut m: Vec<Vec<Rat>> = idx
            .iter()
            .map(|&i| std::iter::once(Rat::one()).chain(pts[i].iter().cloned()).collect())
            .collect();
        let pivots = rref(&mut m);
        if pivots.len() == d {
            // one-dimensional null space of the d × (d+1) system
            let free = (0..=d).find(|c| !pivots.contains(c)).unwrap();
            let mut row = vec![Rat::zero(); d + 1];
            row[free] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                row[p] = -m[r][free].clone();
            }
            let mut c = Constraint::new(row[0].clone(), row[1..].to_vec());
            let signs: BTreeSet<bool> = pts.iter().map(|p| c.eval(p)).filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
            if signs.len() == 1 {
                if !signs.contains(&true) {
                    c = Constraint::new(-c.b.clone(), c.a.iter().map(|x| -x).collect());
                }
                if affine_dimension(&tight_points(v, &c)) == d as isize - 1 {
                    found.push(c);
                }
            }
        }
        // next combination
        let mut k = d;
        while k > 0 && idx[k - 1] == pts.len() - d + k - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        idx[k - 1] += 1;
        for j in k..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
    canonicalize(&HRep::new(d, found, vec![]).unwrap()).unwrap()
}
