//! Operator expressions: sums of tensor products of bound single-site
//! observables.
//!
//! ```text
//! sites 2
//! param t1 0
//! bind A1 sigma pi/2 $t1
//! bind B spin 1 0 pi/4
//! bind P proj pentagon a3
//! term 1 A1@1 B@2
//! ```

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::spin::{sigma, spin_operator, Direction, Spin};
use super::{CMatrix, QuantumError};
use crate::realization::Realization;

#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    Fixed(f64),
    Param(String),
}

impl Angle {
    fn value(&self, params: &BTreeMap<String, f64>) -> Result<f64, QuantumError> {
        match self {
            Angle::Fixed(x) => Ok(*x),
            Angle::Param(p) => params.get(p).copied().ok_or_else(|| QuantumError::UnknownParam(p.clone())),
        }
    }
}

/// How a label becomes a matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum BindingKind {
    /// `2 S_{1/2}(θ,φ)`, outcomes ±1.
    Sigma { theta: Angle, phi: Angle },
    /// `S_j(θ,φ)`.
    Spin { spin: Spin, theta: Angle, phi: Angle },
    /// `2|a⟩⟨a|/⟨a|a⟩ − I` for atom `atom` of a vector file.
    Proj { source: String, atom: String },
    /// The identity on a `dim`-dimensional site.
    Identity { dim: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Binding {
    pub label: String,
    pub kind: BindingKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: f64,
    /// `(label, site)` with sites counted from 0.
    pub factors: Vec<(String, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorExpr {
    pub sites: usize,
    /// Named parameters with their default values, in file order.
    pub params: Vec<(String, f64)>,
    pub bindings: Vec<Binding>,
    pub terms: Vec<Term>,
}

/// `0.5`, `-2`, `pi`, `pi/4`, `3pi/4`, `-pi/2`.
pub fn parse_angle_value(s: &str) -> Option<f64> {
    if let Ok(x) = s.parse::<f64>() {
        return Some(x);
    }
    let (neg, s) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b.parse::<f64>().ok().filter(|d| *d != 0.0)?),
        None => (s, 1.0),
    };
    let k = num.strip_suffix("pi")?;
    let k = if k.is_empty() { 1.0 } else { k.parse::<f64>().ok()? };
    let v = k * PI / den;
    Some(if neg { -v } else { v })
}

fn parse_angle(s: &str) -> Option<Angle> {
    match s.strip_prefix('$') {
        Some(p) if !p.is_empty() => Some(Angle::Param(p.to_string())),
        Some(_) => None,
        None => parse_angle_value(s).map(Angle::Fixed),
    }
}

pub fn parse_operator(text: &str) -> Result<OperatorExpr, QuantumError> {
    let mut sites = None;
    let mut params: Vec<(String, f64)> = Vec::new();
    let mut bindings: Vec<Binding> = Vec::new();
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let t: Vec<&str> = l.split_whitespace().collect();
        let syntax = |m: String| QuantumError::Syntax { line, message: m };
        let angle = |s: &str| parse_angle(s).ok_or_else(|| syntax(format!("bad angle `{s}`")));
        match t[0] {
            "sites" => {
                let n = t
                    .get(1)
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&n| n > 0 && t.len() == 2)
                    .ok_or_else(|| syntax("`sites` needs a positive integer".into()))?;
                sites = Some(n);
            }
            "param" => {
                if t.len() != 3 {
                    return Err(syntax("expected `param <name> <value>`".into()));
                }
                let v = parse_angle_value(t[2]).ok_or_else(|| syntax(format!("bad value `{}`", t[2])))?;
                if params.iter().any(|(p, _)| p == t[1]) {
                    return Err(syntax(format!("parameter `{}` defined twice", t[1])));
                }
                params.push((t[1].to_string(), v));
            }
            "bind" => {
                if t.len() < 3 {
                    return Err(syntax("expected `bind <label> <kind> ...`".into()));
                }
                let kind = match (t[2], t.len()) {
                    ("sigma", 5) => BindingKind::Sigma {
                        theta: angle(t[3])?,
                        phi: angle(t[4])?,
                    },
                    ("spin", 6) => {
                        let j = parse_spin(t[3]).ok_or_else(|| syntax(format!("bad spin `{}`", t[3])))?;
                        BindingKind::Spin {
                            spin: j,
                            theta: angle(t[4])?,
                            phi: angle(t[5])?,
                        }
                    }
                    ("proj", 5) => BindingKind::Proj {
                        source: t[3].to_string(),
                        atom: t[4].to_string(),
                    },
                    ("identity", 4) => BindingKind::Identity {
                        dim: t[3].parse().ok().filter(|&d| d > 0).ok_or_else(|| syntax("bad dimension".into()))?,
                    },
                    (k, _) => return Err(syntax(format!("bad binding `{k}` or wrong number of arguments"))),
                };
                if bindings.iter().any(|b| b.label == t[1]) {
                    return Err(syntax(format!("label `{}` bound twice", t[1])));
                }
                bindings.push(Binding {
                    label: t[1].to_string(),
                    kind,
                });
            }
            "term" => {
                if t.len() < 3 {
                    return Err(syntax("expected `term <coeff> <label@site> ...`".into()));
                }
                let coeff = parse_angle_value(t[1]).ok_or_else(|| syntax(format!("bad coefficient `{}`", t[1])))?;
                let mut factors = Vec::new();
                for f in &t[2..] {
                    let (label, site) = f
                        .split_once('@')
                        .and_then(|(l, s)| Some((l, s.parse::<usize>().ok().filter(|&s| s > 0)?)))
                        .ok_or_else(|| syntax(format!("bad factor `{f}`, expected label@site")))?;
                    if factors.iter().any(|(_, s)| *s == site - 1) {
                        return Err(syntax(format!("site {site} used twice in one term")));
                    }
                    factors.push((label.to_string(), site - 1));
                }
                terms.push(Term { coeff, factors });
            }
            k => return Err(syntax(format!("unknown keyword `{k}`"))),
        }
    }
    let sites = sites.ok_or(QuantumError::Syntax {
        line: 0,
        message: "missing `sites`".into(),
    })?;
    if terms.is_empty() {
        return Err(QuantumError::Syntax {
            line: 0,
            message: "no terms".into(),
        });
    }
    for term in &terms {
        for (label, site) in &term.factors {
            if *site >= sites {
                return Err(QuantumError::SiteOutOfRange { site: site + 1, sites });
            }
            if !bindings.iter().any(|b| &b.label == label) {
                return Err(QuantumError::UnboundLabel(label.clone()));
            }
        }
    }
    Ok(OperatorExpr {
        sites,
        params,
        bindings,
        terms,
    })
}

fn parse_spin(s: &str) -> Option<Spin> {
    let j = match s.split_once('/') {
        Some((a, b)) => a.parse::<f64>().ok()? / b.parse::<f64>().ok().filter(|d| *d != 0.0)?,
        None => s.parse().ok()?,
    };
    Spin::new(j).ok()
}

impl OperatorExpr {
    pub fn param_names(&self) -> Vec<&str> {
        self.params.iter().map(|(p, _)| p.as_str()).collect()
    }

    pub fn default_params(&self) -> BTreeMap<String, f64> {
        self.params.iter().cloned().collect()
    }

    /// Matrices for every label, with parameters taken from `params` and
    /// vector files from `vectors`.
    pub fn bind(
        &self,
        params: &BTreeMap<String, f64>,
        vectors: &dyn Fn(&str) -> Option<Realization>,
    ) -> Result<BTreeMap<String, CMatrix>, QuantumError> {
        let mut out = BTreeMap::new();
        let mut cache: BTreeMap<&str, Realization> = BTreeMap::new();
        for b in &self.bindings {
            let m = match &b.kind {
                BindingKind::Sigma { theta, phi } => sigma(Direction::new(theta.value(params)?, phi.value(params)?)),
                BindingKind::Spin { spin, theta, phi } => {
                    spin_operator(*spin, Direction::new(theta.value(params)?, phi.value(params)?))
                }
                BindingKind::Proj { source, atom } => {
                    if !cache.contains_key(source.as_str()) {
                        let r = vectors(source).ok_or_else(|| QuantumError::UnknownVectors(source.clone()))?;
                        cache.insert(source, r);
                    }
                    let v = cache[source.as_str()].get(atom).ok_or_else(|| QuantumError::UnknownAtom {
                        file: source.clone(),
                        atom: atom.clone(),
                    })?;
                    dichotomic(&v.to_f64())
                }
                BindingKind::Identity { dim } => CMatrix::identity(*dim, *dim),
            };
            out.insert(b.label.clone(), m);
        }
        Ok(out)
    }
}

/// `2|a⟩⟨a|/⟨a|a⟩ − I`.
pub fn dichotomic(a: &[f64]) -> CMatrix {
    let n = a.len();
    let norm: f64 = a.iter().map(|x| x * x).sum();
    CMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        Complex64::new(2.0 * a[i] * a[j] / norm - id, 0.0)
    })
}

/// `Σ_t coeff_t · ⊗_s M_{t,s}`; sites a term leaves out carry the identity.
pub fn build_operator(expr: &OperatorExpr, bindings: &BTreeMap<String, CMatrix>) -> Result<CMatrix, QuantumError> {
    let lookup = |l: &str| bindings.get(l).ok_or_else(|| QuantumError::UnboundLabel(l.to_string()));
    // site dimensions, from the first factor seen at each site
    let mut dims: Vec<Option<usize>> = vec![None; expr.sites];
    for term in &expr.terms {
        for (label, site) in &term.factors {
            let m = lookup(label)?;
            if !m.is_square() {
                return Err(QuantumError::NotSquare {
                    rows: m.nrows(),
                    cols: m.ncols(),
                });
            }
            match dims[*site] {
                None => dims[*site] = Some(m.nrows()),
                Some(d) if d != m.nrows() => {
                    return Err(QuantumError::Dimension {
                        expected: d,
                        found: m.nrows(),
                    })
                }
                _ => {}
            }
        }
    }
    let dims: Vec<usize> = dims
        .into_iter()
        .enumerate()
        .map(|(s, d)| d.ok_or(QuantumError::SiteOutOfRange { site: s + 1, sites: expr.sites }))
        .collect::<Result<_, _>>()?;
    let n: usize = dims.iter().product();
    let mut total = CMatrix::zeros(n, n);
    for term in &expr.terms {
        let mut prod = CMatrix::identity(1, 1);
        for (s, &d) in dims.iter().enumerate() {
            let factor = match term.factors.iter().find(|(_, site)| *site == s) {
                Some((label, _)) => lookup(label)?.clone(),
                None => CMatrix::identity(d, d),
            };
            prod = prod.kronecker(&factor);
        }
        total += prod * Complex64::new(term.coeff, 0.0);
    }
    Ok(total)
}
