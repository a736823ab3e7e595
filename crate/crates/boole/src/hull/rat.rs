//! Exact rational helpers shared by the hull engine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Parses `7`, `-3/4`, `0.25` or `1.5e-3` exactly.
pub fn parse_rat(s: &str) -> Option<Rat> {
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    if let Ok(i) = s.parse::<BigInt>() {
        return Some(Rat::from_integer(i));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mant.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = format!("{whole}{frac}0").parse().ok()?;
    let scale = exp - frac.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut r = Rat::from_integer(n);
    if scale >= 0 {
        r *= Rat::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= Rat::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

/// `3`, `-1/2`: integers render without a denominator.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales a rational row by a positive factor to coprime integers. The zero
/// row maps to itself.
pub fn integer_row(row: &[Rat]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Reduces `m` to reduced row echelon form in place and returns the pivot
/// column of each nonzero row. Columns are scanned left to right, so the
/// pivots are the greedy-left independent columns.
pub fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sign(r: &Rat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rat {
        Rat::new(p.into(), d.into())
    }

    #[test]
    fn parses_exactly() {
        assert_eq!(parse_rat("7"), Some(int(7)));
        assert_eq!(parse_rat("-3/6"), Some(q(-1, 2)));
        assert_eq!(parse_rat("0.25"), Some(q(1, 4)));
        assert_eq!(parse_rat("-.5"), Some(q(-1, 2)));
        assert_eq!(parse_rat("1.5e-3"), Some(q(3, 2000)));
        assert_eq!(parse_rat("2E2"), Some(int(200)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
        assert_eq!(parse_rat("."), None);
    }

    #[test]
    fn formats() {
        assert_eq!(fmt_rat(&int(-4)), "-4");
        assert_eq!(fmt_rat(&q(2, -6)), "-1/3");
    }

    #[test]
    fn integer_rows_are_coprime() {
        let r = integer_row(&[q(1, 2), q(-3, 4), int(0)]);
        assert_eq!(r, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
        let r = integer_row(&[int(4), int(-6)]);
        assert_eq!(r, vec![BigInt::from(2), BigInt::from(-3)]);
    }

    #[test]
    fn rref_pivots_are_greedy_left() {
        let mut m = vec![
            vec![int(1), int(0), int(0), int(0)],
            vec![int(1), int(1), int(1), int(0)],
            vec![int(1), int(0), int(0), int(1)],
        ];
        assert_eq!(rref(&mut m), vec![0, 1, 3]);
        // column 2 equals column 1
        assert_eq!(m[1][2], int(1));
    }
}
