//! Exact convex polytopes: facets from vertices, vertices from facets,
//! canonical forms and the DD interchange format.
//!
//! No floating point is used anywhere in this module.

mod dd;
pub mod format;
pub mod rat;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use format::{emit_h, emit_v, parse_dd, DdDocument};
pub use rat::Rat;

use rat::{dot, integer_row, rref, sign};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HullError {
    #[error("no points given")]
    Empty,
    #[error("row {row} has length {found}, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("zero row in H-representation")]
    ZeroRow,
    #[error("polyhedron is unbounded along the ray ({})", join(.ray))]
    Unbounded { ray: Vec<String> },
    #[error("polyhedron is empty")]
    Infeasible,
}

fn join(v: &[String]) -> String {
    v.join(", ")
}

/// A polytope given as the convex hull of finitely many points in `Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub dim: usize,
    pub points: Vec<Vec<Rat>>,
}

/// `b + a·x >= 0` (inequality) or `b + a·x = 0` (linearity).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub b: Rat,
    pub a: Vec<Rat>,
}

/// A polyhedron given by inequalities and equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub inequalities: Vec<Constraint>,
    pub linearities: Vec<Constraint>,
}

impl VRep {
    pub fn new(points: Vec<Vec<Rat>>) -> Result<VRep, HullError> {
        let dim = points.first().ok_or(HullError::Empty)?.len();
        check_lengths(points.iter().map(|p| p.len()), dim)?;
        Ok(VRep { dim, points })
    }

    pub fn from_ints<R: AsRef<[i64]>>(points: &[R]) -> Result<VRep, HullError> {
        VRep::new(
            points
                .iter()
                .map(|p| p.as_ref().iter().map(|&x| rat::int(x)).collect())
                .collect(),
        )
    }

    /// Distinct points in sorted order.
    pub fn distinct_points(&self) -> Vec<Vec<Rat>> {
        let set: BTreeSet<Vec<Rat>> = self.points.iter().cloned().collect();
        set.into_iter().collect()
    }

    pub fn deduped(&self) -> VRep {
        VRep {
            dim: self.dim,
            points: self.distinct_points(),
        }
    }
}

fn check_lengths(lengths: impl Iterator<Item = usize>, expected: usize) -> Result<(), HullError> {
    for (row, found) in lengths.enumerate() {
        if found != expected {
            return Err(HullError::Ragged {
                row: row + 1,
                found,
                expected,
            });
        }
    }
    Ok(())
}

impl Constraint {
    pub fn new(b: Rat, a: Vec<Rat>) -> Constraint {
        Constraint { b, a }
    }

    pub fn from_ints(row: &[i64]) -> Constraint {
        Constraint {
            b: rat::int(row[0]),
            a: row[1..].iter().map(|&x| rat::int(x)).collect(),
        }
    }

    /// `b + a·x`.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        &self.b + dot(&self.a, x)
    }

    fn row(&self) -> Vec<Rat> {
        std::iter::once(self.b.clone()).chain(self.a.iter().cloned()).collect()
    }

    fn from_ints_big(row: &[BigInt]) -> Constraint {
        Constraint {
            b: Rat::from_integer(row[0].clone()),
            a: row[1..].iter().map(|x| Rat::from_integer(x.clone())).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.b.is_zero() && self.a.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.row().iter().map(rat::fmt_rat).collect();
        f.write_str(&parts.join(" "))
    }
}

impl HRep {
    pub fn new(
        dim: usize,
        inequalities: Vec<Constraint>,
        linearities: Vec<Constraint>,
    ) -> Result<HRep, HullError> {
        check_lengths(
            inequalities.iter().chain(&linearities).map(|c| c.a.len()),
            dim,
        )?;
        Ok(HRep {
            dim,
            inequalities,
            linearities,
        })
    }

    /// Membership test: every inequality holds and every linearity is tight.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.inequalities.iter().all(|c| !c.eval(x).is_negative())
            && self.linearities.iter().all(|c| c.eval(x).is_zero())
    }

    /// Canonical rows as sets, for order-free comparison.
    pub fn row_sets(&self) -> (BTreeSet<Constraint>, BTreeSet<Constraint>) {
        (
            self.inequalities.iter().cloned().collect(),
            self.linearities.iter().cloned().collect(),
        )
    }
}

/// Scales every row to coprime integers (inequalities by a positive factor,
/// equations so that the first nonzero coefficient of `a` is positive), then
/// sorts and dedups. Idempotent.
pub fn canonicalize(h: &HRep) -> Result<HRep, HullError> {
    let mut ineq = BTreeSet::new();
    for c in &h.inequalities {
        if c.is_zero() {
            return Err(HullError::ZeroRow);
        }
        ineq.insert(Constraint::from_ints_big(&integer_row(&c.row())));
    }
    let mut lin = BTreeSet::new();
    for c in &h.linearities {
        if c.is_zero() {
            return Err(HullError::ZeroRow);
        }
        let mut row = integer_row(&c.row());
        let lead = row[1..]
            .iter()
            .find(|x| !x.is_zero())
            .map_or(row[0].is_negative(), |x| x.is_negative());
        if lead {
            row.iter_mut().for_each(|x| *x = -&*x);
        }
        lin.insert(Constraint::from_ints_big(&row));
    }
    Ok(HRep {
        dim: h.dim,
        inequalities: ineq.into_iter().collect(),
        linearities: lin.into_iter().collect(),
    })
}

/// Affine hull of the points: the greedy-left independent coordinates, and
/// for every other coordinate the equation expressing it through them.
struct AffineHull {
    free: Vec<usize>,
    equations: Vec<Constraint>,
}

fn affine_hull(points: &[Vec<Rat>], dim: usize) -> AffineHull {
    let mut m: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| std::iter::once(Rat::one()).chain(p.iter().cloned()).collect())
        .collect();
    let pivots = rref(&mut m);
    let free: Vec<usize> = pivots.iter().skip(1).map(|p| p - 1).collect();
    let mut equations = Vec::new();
    for j in 1..=dim {
        if pivots.contains(&j) {
            continue;
        }
        // column j = sum over pivot rows r of m[r][j] * column pivots[r]
        let mut a = vec![Rat::zero(); dim];
        a[j - 1] = Rat::one();
        let mut b = Rat::zero();
        for (r, &p) in pivots.iter().enumerate() {
            if p == 0 {
                b = -m[r][j].clone();
            } else {
                a[p - 1] = -m[r][j].clone();
            }
        }
        equations.push(Constraint { b, a });
    }
    AffineHull { free, equations }
}

/// Minimal H-representation of the convex hull: one equation per
/// codimension of the affine hull, then the facets found by double
/// description inside it. Facet rows carry zeros on the coordinates the
/// equations eliminate. Duplicate points are ignored.
pub fn hull(v: &VRep) -> Result<HRep, HullError> {
    if v.points.is_empty() {
        return Err(HullError::Empty);
    }
    check_lengths(v.points.iter().map(|p| p.len()), v.dim)?;
    let points = v.distinct_points();
    let aff = affine_hull(&points, v.dim);
    let mut inequalities = Vec::new();
    if !aff.free.is_empty() {
        let rows: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| {
                let r: Vec<Rat> = std::iter::once(Rat::one())
                    .chain(aff.free.iter().map(|&i| p[i].clone()))
                    .collect();
                integer_row(&r)
            })
            .collect();
        let rays = dd::extreme_rays(&rows)
            .expect("points spanning their affine hull give a pointed cone");
        for ray in rays {
            let mut a = vec![Rat::zero(); v.dim];
            for (k, &i) in aff.free.iter().enumerate() {
                a[i] = Rat::from_integer(ray[k + 1].clone());
            }
            inequalities.push(Constraint {
                b: Rat::from_integer(ray[0].clone()),
                a,
            });
        }
    }
    canonicalize(&HRep {
        dim: v.dim,
        inequalities,
        linearities: aff.equations,
    })
}

/// Extreme points of a bounded, non-empty polyhedron.
pub fn vertices(h: &HRep) -> Result<VRep, HullError> {
    let m = h.dim;
    check_lengths(
        h.inequalities.iter().chain(&h.linearities).map(|c| c.a.len()),
        m,
    )?;
    // Solve the equations: x = x0 + N y.
    let mut eq: Vec<Vec<Rat>> = h
        .linearities
        .iter()
        .map(|c| c.a.iter().cloned().chain(std::iter::once(-c.b.clone())).collect())
        .collect();
    let pivots = rref(&mut eq);
    if pivots.contains(&m) {
        return Err(HullError::Infeasible);
    }
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    let mut x0 = vec![Rat::zero(); m];
    for (r, &p) in pivots.iter().enumerate() {
        x0[p] = eq[r][m].clone();
    }
    let basis: Vec<Vec<Rat>> = free
        .iter()
        .map(|&f| {
            let mut col = vec![Rat::zero(); m];
            col[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                col[p] = -eq[r][f].clone();
            }
            col
        })
        .collect();
    // Inequalities in y: c_i + g_i·y >= 0.
    let cs: Vec<Rat> = h.inequalities.iter().map(|c| c.eval(&x0)).collect();
    let gs: Vec<Vec<Rat>> = h
        .inequalities
        .iter()
        .map(|c| basis.iter().map(|col| dot(&c.a, col)).collect())
        .collect();
    let k = basis.len();
    let to_x = |y: &[Rat]| -> Vec<Rat> {
        let mut x = vec![Rat::zero(); m];
        for (yi, col) in y.iter().zip(&basis) {
            for (xj, cj) in x.iter_mut().zip(col) {
                *xj += yi * cj;
            }
        }
        x
    };
    if k == 0 {
        return if cs.iter().all(|c| !c.is_negative()) {
            Ok(VRep { dim: m, points: vec![x0] })
        } else {
            Err(HullError::Infeasible)
        };
    }
    // Directions with g_i·y = 0 for all i form a line through the feasible
    // set; restrict y to a complement and remember one such direction.
    let mut g = gs.clone();
    let gp = rref(&mut g);
    let line = (0..k).find(|c| !gp.contains(c)).map(|f| {
        let mut y = vec![Rat::zero(); k];
        y[f] = Rat::one();
        for (r, &p) in gp.iter().enumerate() {
            y[p] = -g[r][f].clone();
        }
        to_x(&y)
    });
    let keep = gp;
    let mut rows: Vec<Vec<BigInt>> = vec![{
        let mut r = vec![BigInt::zero(); keep.len() + 1];
        r[0] = BigInt::one();
        r
    }];
    for (c, gi) in cs.iter().zip(&gs) {
        let r: Vec<Rat> = std::iter::once(c.clone())
            .chain(keep.iter().map(|&j| gi[j].clone()))
            .collect();
        rows.push(integer_row(&r));
    }
    let rays = dd::extreme_rays(&rows).expect("restricted cone is pointed");
    let mut points = BTreeSet::new();
    let mut recession = None;
    for ray in rays {
        let t = Rat::from_integer(ray[0].clone());
        let mut y = vec![Rat::zero(); k];
        for (i, &j) in keep.iter().enumerate() {
            y[j] = Rat::from_integer(ray[i + 1].clone());
        }
        if t.is_zero() {
            recession.get_or_insert_with(|| to_x(&y));
        } else {
            let y: Vec<Rat> = y.iter().map(|v| v / &t).collect();
            let d = to_x(&y);
            points.insert(x0.iter().zip(&d).map(|(a, b)| a + b).collect::<Vec<_>>());
        }
    }
    if points.is_empty() {
        return Err(HullError::Infeasible);
    }
    if let Some(ray) = line.or(recession) {
        return Err(HullError::Unbounded {
            ray: integer_row(&ray).iter().map(|x| x.to_string()).collect(),
        });
    }
    Ok(VRep {
        dim: m,
        points: points.into_iter().collect(),
    })
}

/// Vertices of `v` that satisfy `c` with equality.
pub fn tight_points<'a>(v: &'a VRep, c: &Constraint) -> Vec<&'a Vec<Rat>> {
    v.points.iter().filter(|p| c.eval(p).is_zero()).collect()
}

/// Dimension of the affine hull of a point set (-1 for the empty set).
pub fn affine_dimension(points: &[&Vec<Rat>]) -> isize {
    if points.is_empty() {
        return -1;
    }
    let base = points[0];
    let mut m: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rref(&mut m).len() as isize
}

/// Sign of `b + a·x`, exposed for callers checking soundness.
pub fn side(c: &Constraint, x: &[Rat]) -> i32 {
    sign(&c.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(ineq: &[&[i64]], lin: &[&[i64]]) -> HRep {
        let dim = ineq.iter().chain(lin).next().unwrap().len() - 1;
        HRep::new(
            dim,
            ineq.iter().map(|r| Constraint::from_ints(r)).collect(),
            lin.iter().map(|r| Constraint::from_ints(r)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn unit_interval() {
        let v = VRep::from_ints(&[[0], [1]]).unwrap();
        let got = hull(&v).unwrap();
        assert_eq!(got, h(&[&[0, 1], &[1, -1]], &[]));
        let back = vertices(&got).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn repeated_point_has_only_equations() {
        let v = VRep::from_ints(&[[2, 3], [2, 3]]).unwrap();
        let got = hull(&v).unwrap();
        assert!(got.inequalities.is_empty());
        assert_eq!(got, canonicalize(&h(&[], &[&[-2, 1, 0], &[-3, 0, 1]])).unwrap());
    }

    #[test]
    fn canonical_forms() {
        // 2x <= 4
        let c = canonicalize(&h(&[&[4, -2]], &[])).unwrap();
        assert_eq!(c, h(&[&[2, -1]], &[]));
        // -x = -1  becomes  x - 1 = 0
        let c = canonicalize(&h(&[], &[&[1, -1]])).unwrap();
        assert_eq!(c, h(&[], &[&[-1, 1]]));
        assert_eq!(canonicalize(&c).unwrap(), c);
        let z = canonicalize(&h(&[&[0, 0]], &[])).unwrap_err();
        assert_eq!(z, HullError::ZeroRow);
    }

    #[test]
    fn cube_vertices() {
        let cube = h(
            &[&[1, -1, 0, 0], &[0, 1, 0, 0], &[1, 0, -1, 0], &[0, 0, 1, 0], &[1, 0, 0, -1], &[0, 0, 0, 1]],
            &[],
        );
        assert_eq!(vertices(&cube).unwrap().points.len(), 8);
    }

    #[test]
    fn unbounded_and_empty() {
        let ray = h(&[&[0, 1]], &[]);
        assert!(matches!(vertices(&ray), Err(HullError::Unbounded { .. })));
        let strip = h(&[&[0, 1, 0], &[1, -1, 0]], &[]);
        let e = vertices(&strip).unwrap_err();
        assert_eq!(e, HullError::Unbounded { ray: vec!["0".into(), "1".into()] });
        let empty = h(&[&[-1, 1], &[0, -1]], &[]);
        assert_eq!(vertices(&empty).unwrap_err(), HullError::Infeasible);
        let clash = h(&[], &[&[1, 0]]);
        assert_eq!(vertices(&clash).unwrap_err(), HullError::Infeasible);
    }

    #[test]
    fn equations_are_honoured() {
        // segment x + y = 1, 0 <= x <= 1
        let seg = h(&[&[0, 1, 0], &[1, -1, 0]], &[&[-1, 1, 1]]);
        let v = vertices(&seg).unwrap();
        assert_eq!(v, VRep::from_ints(&[[0, 1], [1, 0]]).unwrap());
        assert_eq!(hull(&v).unwrap(), canonicalize(&h(&[&[0, 1, 0], &[1, -1, 0]], &[&[-1, 1, 1]])).unwrap());
    }

    #[test]
    fn ragged_input_is_rejected() {
        let e = VRep::new(vec![vec![rat::int(1)], vec![]]).unwrap_err();
        assert_eq!(e, HullError::Ragged { row: 2, found: 0, expected: 1 });
    }
}
