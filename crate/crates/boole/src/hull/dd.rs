//! Incremental double description: extreme rays of a pointed cone
//! `{z : M z >= 0}` given by an integer matrix `M` of full column rank.
//!
//! Constraints are inserted in input order. Two rays are combined only when
//! they are adjacent, which is decided combinatorially: their common zero set
//! must have at least `d - 2` elements and must not be contained in the zero
//! set of any third ray.
//!
//! Arithmetic runs on checked `i128` and restarts on `BigInt` if any product
//! overflows, so the result is always exact.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::rat::{rref, Rat};

#[derive(Debug, PartialEq, Eq)]
pub enum DdFailure {
    /// The cone contains a line; `direction` spans part of its lineality space.
    NotPointed { direction: Vec<BigInt> },
}

trait Num: Clone + Debug + PartialEq + Send + Sync + Sized {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn zero() -> Self;
    fn sign(&self) -> i32;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn gcd(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Num for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        // leave headroom so that negation never overflows
        b.to_i128().filter(|v| *v != i128::MIN)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn zero() -> Self {
        0
    }
    fn sign(&self) -> i32 {
        self.signum() as i32
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o).filter(|v| *v != i128::MIN)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o).filter(|v| *v != i128::MIN)
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Num for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn sign(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

struct Overflow;

#[derive(Clone)]
struct Ray<N> {
    v: Vec<N>,
    zero: Bits,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn contains(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

fn dot<N: Num>(a: &[N], b: &[N]) -> Result<N, Overflow> {
    let mut s = N::zero();
    for (x, y) in a.iter().zip(b) {
        s = s.add(&x.mul(y).ok_or(Overflow)?).ok_or(Overflow)?;
    }
    Ok(s)
}

fn normalize<N: Num>(v: &mut [N]) {
    let g = v.iter().fold(N::zero(), |acc, x| acc.gcd(x));
    if g.sign() != 0 && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.div(&g);
        }
    }
}

/// Extreme rays of `{z : rows·z >= 0}`, each scaled to coprime integers and
/// listed in a deterministic order (sorted).
pub fn extreme_rays(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>, DdFailure> {
    let d = rows.first().map_or(0, |r| r.len());
    let basis = initial_basis(rows, d)?;
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(i128::from_big).collect())
        .collect();
    let mut out = match small.map(|m| run(&m, d, &basis)) {
        Some(Ok(rays)) => rays,
        _ => match run(rows, d, &basis) {
            Ok(rays) => rays,
            Err(Overflow) => unreachable!("BigInt arithmetic cannot overflow"),
        },
    };
    out.sort();
    Ok(out)
}

/// Greedy choice of `d` independent rows (in input order) together with the
/// rays of the simplicial cone they span.
struct Basis {
    rows: Vec<usize>,
    rays: Vec<Vec<BigInt>>,
}

fn initial_basis(rows: &[Vec<BigInt>], d: usize) -> Result<Basis, DdFailure> {
    // Row reduce the transpose: pivot columns are the greedy-left
    // independent rows.
    let mut t: Vec<Vec<Rat>> = (0..d)
        .map(|j| rows.iter().map(|r| Rat::from_integer(r[j].clone())).collect())
        .collect();
    let pivots = rref(&mut t);
    if pivots.len() < d {
        return Err(DdFailure::NotPointed {
            direction: null_vector(rows, d),
        });
    }
    // Invert the basis matrix: ray k satisfies B·r_k = e_k.
    let mut aug: Vec<Vec<Rat>> = pivots
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let mut r: Vec<Rat> = rows[i].iter().map(|x| Rat::from_integer(x.clone())).collect();
            r.extend((0..d).map(|j| if j == k { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    rref(&mut aug);
    let rays = (0..d)
        .map(|k| {
            let col: Vec<Rat> = (0..d).map(|i| aug[i][d + k].clone()).collect();
            super::rat::integer_row(&col)
        })
        .collect();
    Ok(Basis { rows: pivots, rays })
}

/// Some nonzero `z` with `rows·z = 0`, for error reporting.
fn null_vector(rows: &[Vec<BigInt>], d: usize) -> Vec<BigInt> {
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let pivots = rref(&mut m);
    let free = (0..d).find(|c| !pivots.contains(c)).unwrap_or(0);
    let mut z = vec![Rat::zero(); d];
    z[free] = Rat::one();
    for (r, &p) in pivots.iter().enumerate() {
        z[p] = -m[r][free].clone();
    }
    super::rat::integer_row(&z)
}

fn run<N: Num>(rows: &[Vec<N>], d: usize, basis: &Basis) -> Result<Vec<Vec<BigInt>>, Overflow> {
    let n = rows.len();
    let mut done = vec![false; n];
    let mut rays: Vec<Ray<N>> = Vec::with_capacity(d);
    for (k, r) in basis.rays.iter().enumerate() {
        let v: Vec<N> = r.iter().map(|x| N::from_big(x).ok_or(Overflow)).collect::<Result<_, _>>()?;
        let mut zero = Bits::new(n);
        for (j, &row) in basis.rows.iter().enumerate() {
            if j != k {
                zero.set(row);
            }
        }
        rays.push(Ray { v, zero });
    }
    for &i in &basis.rows {
        done[i] = true;
    }
    // Rows outside the basis may vanish on initial rays.
    for (i, row) in rows.iter().enumerate() {
        if done[i] {
            continue;
        }
        rays = insert(rays, row, i, d)?;
        done[i] = true;
    }
    Ok(rays
        .into_iter()
        .map(|r| r.v.iter().map(|x| x.to_big()).collect())
        .collect())
}

fn insert<N: Num>(rays: Vec<Ray<N>>, row: &[N], index: usize, d: usize) -> Result<Vec<Ray<N>>, Overflow> {
    let signs: Vec<N> = rays.iter().map(|r| dot(row, &r.v)).collect::<Result<_, _>>()?;
    let pos: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].sign() > 0).collect();
    let neg: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].sign() < 0).collect();
    if neg.is_empty() {
        let mut rays = rays;
        for (r, s) in rays.iter_mut().zip(&signs) {
            if s.sign() == 0 {
                r.zero.set(index);
            }
        }
        return Ok(rays);
    }
    let need = d.saturating_sub(2) as u32;
    let combos: Vec<Result<Vec<Ray<N>>, Overflow>> = pos
        .par_iter()
        .map(|&p| {
            let mut found = Vec::new();
            for &q in &neg {
                let common = rays[p].zero.and(&rays[q].zero);
                if common.count() < need {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && r.zero.contains(&common));
                if blocked {
                    continue;
                }
                // signs[p] > 0 > signs[q]: the combination vanishes on `row`.
                let sp = &signs[p];
                let sq = signs[q].neg();
                let mut v = Vec::with_capacity(d);
                for (a, b) in rays[q].v.iter().zip(&rays[p].v) {
                    let x = sp.mul(a).ok_or(Overflow)?;
                    let y = sq.mul(b).ok_or(Overflow)?;
                    v.push(x.add(&y).ok_or(Overflow)?);
                }
                normalize(&mut v);
                let mut zero = common;
                zero.set(index);
                found.push(Ray { v, zero });
            }
            Ok(found)
        })
        .collect();
    let mut next: Vec<Ray<N>> = Vec::new();
    for (i, mut r) in rays.into_iter().enumerate() {
        match signs[i].sign() {
            1 => next.push(r),
            0 => {
                r.zero.set(index);
                next.push(r);
            }
            _ => {}
        }
    }
    for c in combos {
        next.extend(c?);
    }
    Ok(next)
}
