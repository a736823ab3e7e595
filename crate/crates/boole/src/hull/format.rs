//! The line-based DD interchange format.
//!
//! ```text
//! * comment
//! H-representation
//! linearity 1  3
//! begin
//!  3 3 real
//!   0  1  0
//!   1 -1  0
//!  -1  1  1
//! end
//! ```
//!
//! H rows are `b -A`, i.e. `b + a·x >= 0`; V rows are `1 x`.

use thiserror::Error;

use super::rat::{fmt_rat, parse_rat, Rat};
use super::{canonicalize, Constraint, HRep, VRep};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing `begin`")]
    NoBegin,
    #[error("missing `end`")]
    NoEnd,
    #[error("empty body between `begin` and `end`")]
    EmptyBody,
    #[error("line {line}: expected {expected} entries, found {found}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: V-representation rows must start with 1 (rays are not supported)")]
    NotAVertex { line: usize },
    #[error("linearity in a V-representation (lines are not supported)")]
    VLinearity,
    #[error("linearity index {0} out of range")]
    LinearityIndex(usize),
    #[error("header announces {announced} rows, body has {found}")]
    RowCount { announced: usize, found: usize },
    #[error("zero row in H-representation")]
    ZeroRow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DdDocument {
    V(VRep),
    H(HRep),
}

fn bad(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line,
        message: message.into(),
    }
}

pub fn parse_dd(text: &str) -> Result<DdDocument, FormatError> {
    let mut is_v = false;
    let mut linearity: Vec<usize> = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    // preamble
    loop {
        let Some((n, l)) = lines.next() else {
            return Err(FormatError::NoBegin);
        };
        if l.is_empty() || l.starts_with('*') {
            continue;
        }
        match l {
            "V-representation" => is_v = true,
            "H-representation" => is_v = false,
            "begin" => break,
            _ if l.starts_with("linearity") => {
                let nums: Vec<usize> = l
                    .split_whitespace()
                    .skip(1)
                    .map(|t| t.parse().map_err(|_| bad(n, format!("bad linearity entry `{t}`"))))
                    .collect::<Result<_, _>>()?;
                let (&k, idx) = nums.split_first().ok_or_else(|| bad(n, "empty linearity line"))?;
                if idx.len() != k {
                    return Err(bad(n, format!("linearity announces {k} rows, lists {}", idx.len())));
                }
                linearity = idx.to_vec();
            }
            _ => return Err(bad(n, format!("unexpected `{l}`"))),
        }
    }
    // size line
    let (n, size) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty() && !l.starts_with('*'))
        .ok_or(FormatError::NoEnd)?;
    if size == "end" {
        return Err(FormatError::EmptyBody);
    }
    let parts: Vec<&str> = size.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(bad(n, "expected `<rows> <cols> <numbertype>`"));
    }
    let rows: usize = parts[0].parse().map_err(|_| bad(n, "bad row count"))?;
    let cols: usize = parts[1].parse().map_err(|_| bad(n, "bad column count"))?;
    if !matches!(parts[2], "integer" | "rational" | "real") {
        return Err(bad(n, format!("unknown number type `{}`", parts[2])));
    }
    if cols == 0 {
        return Err(bad(n, "column count must be positive"));
    }
    let mut data: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut closed = false;
    for (n, l) in lines.by_ref() {
        if l.is_empty() || l.starts_with('*') {
            continue;
        }
        if l == "end" {
            closed = true;
            break;
        }
        let row: Vec<Rat> = l
            .split_whitespace()
            .map(|t| parse_rat(t).ok_or_else(|| bad(n, format!("bad number `{t}`"))))
            .collect::<Result<_, _>>()?;
        if row.len() != cols {
            return Err(FormatError::RowLength {
                line: n,
                expected: cols,
                found: row.len(),
            });
        }
        data.push((n, row));
    }
    if !closed {
        return Err(FormatError::NoEnd);
    }
    if data.is_empty() {
        return Err(FormatError::EmptyBody);
    }
    if data.len() != rows {
        return Err(FormatError::RowCount {
            announced: rows,
            found: data.len(),
        });
    }
    if is_v {
        if !linearity.is_empty() {
            return Err(FormatError::VLinearity);
        }
        let one = Rat::from_integer(1.into());
        let mut points = Vec::with_capacity(rows);
        for (n, r) in data {
            if r[0] != one {
                return Err(FormatError::NotAVertex { line: n });
            }
            points.push(r[1..].to_vec());
        }
        return Ok(DdDocument::V(VRep {
            dim: cols - 1,
            points,
        }));
    }
    for &i in &linearity {
        if i == 0 || i > rows {
            return Err(FormatError::LinearityIndex(i));
        }
    }
    let mut h = HRep {
        dim: cols - 1,
        inequalities: Vec::new(),
        linearities: Vec::new(),
    };
    for (k, (_, r)) in data.into_iter().enumerate() {
        let c = Constraint {
            b: r[0].clone(),
            a: r[1..].to_vec(),
        };
        if linearity.contains(&(k + 1)) {
            h.linearities.push(c);
        } else {
            h.inequalities.push(c);
        }
    }
    Ok(DdDocument::H(h))
}

/// Parses and canonicalizes an H-representation document.
pub fn parse_h(text: &str) -> Result<HRep, FormatError> {
    match parse_dd(text)? {
        DdDocument::H(h) => canonicalize(&h).map_err(|_| FormatError::ZeroRow),
        DdDocument::V(_) => Err(bad(0, "expected an H-representation")),
    }
}

pub fn parse_v(text: &str) -> Result<VRep, FormatError> {
    match parse_dd(text)? {
        DdDocument::V(v) => Ok(v),
        DdDocument::H(_) => Err(bad(0, "expected a V-representation")),
    }
}

fn row(entries: impl Iterator<Item = String>) -> String {
    let mut s = String::new();
    for e in entries {
        s.push_str(&format!(" {e:>2}"));
    }
    s
}

/// H-representation: inequalities first, then the linearity rows.
pub fn emit_h(h: &HRep) -> String {
    let n = h.inequalities.len() + h.linearities.len();
    let mut s = String::from("H-representation\n");
    if !h.linearities.is_empty() {
        let idx: Vec<String> = (h.inequalities.len() + 1..=n).map(|i| i.to_string()).collect();
        s.push_str(&format!("linearity {}  {}\n", h.linearities.len(), idx.join(" ")));
    }
    s.push_str(&format!("begin\n {} {} real\n", n, h.dim + 1));
    for c in h.inequalities.iter().chain(&h.linearities) {
        let entries = std::iter::once(&c.b).chain(&c.a).map(fmt_rat);
        s.push_str(&row(entries));
        s.push('\n');
    }
    s.push_str("end\n");
    s
}

pub fn emit_v(v: &VRep) -> String {
    let mut s = format!("V-representation\nbegin\n {} {} real\n", v.points.len(), v.dim + 1);
    for p in &v.points {
        let entries = std::iter::once("1".to_string()).chain(p.iter().map(fmt_rat));
        s.push_str(&row(entries));
        s.push('\n');
    }
    s.push_str("end\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_v_blocks() {
        let doc = parse_dd("* two\n*\nV-representation\nbegin\n2   2   integer\n1   0\n1   1\nend\n").unwrap();
        let DdDocument::V(v) = doc else { panic!() };
        assert_eq!(v.dim, 1);
        assert_eq!(v.points.len(), 2);
    }

    #[test]
    fn reads_linearity() {
        let t = "H-representation\nlinearity 1  2\nbegin\n 2 2 real\n 0 1\n -1 1\nend\n";
        let DdDocument::H(h) = parse_dd(t).unwrap() else { panic!() };
        assert_eq!((h.inequalities.len(), h.linearities.len()), (1, 1));
        assert_eq!(emit_h(&h), "H-representation\nlinearity 1  2\nbegin\n 2 2 real\n  0  1\n -1  1\nend\n");
    }

    #[test]
    fn rejects_bad_documents() {
        assert_eq!(parse_dd("V-representation\nbegin\nend\n").unwrap_err(), FormatError::EmptyBody);
        assert_eq!(
            parse_dd("V-representation\nbegin\n1 2 real\n0 1\nend\n").unwrap_err(),
            FormatError::NotAVertex { line: 4 }
        );
        assert_eq!(
            parse_dd("H-representation\nbegin\n1 2 real\n0 1 1\nend\n").unwrap_err(),
            FormatError::RowLength { line: 4, expected: 2, found: 3 }
        );
        assert_eq!(
            parse_dd("H-representation\nbegin\n2 2 real\n0 1\nend\n").unwrap_err(),
            FormatError::RowCount { announced: 2, found: 1 }
        );
        assert!(matches!(parse_dd("H-rep\nbegin\n").unwrap_err(), FormatError::Malformed { line: 1, .. }));
        assert_eq!(parse_dd("H-representation\n").unwrap_err(), FormatError::NoBegin);
        assert_eq!(parse_dd("begin\n1 2 real\n0 1\n").unwrap_err(), FormatError::NoEnd);
    }

    #[test]
    fn rationals_survive_a_round_trip() {
        let t = "V-representation\nbegin\n 2 2 rational\n  1 1/2\n  1 -3/4\nend\n";
        let v = parse_v(t).unwrap();
        let out = emit_v(&v);
        assert_eq!(out, "V-representation\nbegin\n 2 2 real\n  1 1/2\n  1 -3/4\nend\n");
        assert_eq!(parse_v(&out).unwrap(), v);
    }
}
