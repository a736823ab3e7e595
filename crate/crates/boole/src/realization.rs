//! Vector realizations: one ray per atom, contexts as orthogonal bases.
//!
//! Coordinates are kept exact when they are written as integers or `p/q`
//! and as doubles when written with a decimal point. Exact realizations are
//! checked exactly; anything else uses a tolerance.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::hull::rat::{dot, parse_rat, Rat};
use crate::logic::{Logic, LogicError};

#[derive(Debug, Error, PartialEq)]
pub enum RealizationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `dim` header")]
    NoDimension,
    #[error("vector `{name}` has {found} coordinates, expected {expected}")]
    Dimension {
        name: String,
        found: usize,
        expected: usize,
    },
    #[error("vector `{0}` is zero")]
    ZeroVector(String),
    #[error("vector `{0}` given twice")]
    DuplicateVector(String),
    #[error("no vector for atom `{0}`")]
    MissingVector(String),
    #[error("tolerance 0 needs exact coordinates, but `{0}` has decimal entries")]
    InexactAtZeroTolerance(String),
    #[error("negative tolerance {0}")]
    BadTolerance(f64),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coord {
    Exact(Rat),
    Float(f64),
}

impl Coord {
    pub fn to_f64(&self) -> f64 {
        match self {
            Coord::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Coord::Float(x) => *x,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Coord::Exact(r) => r.is_zero(),
            Coord::Float(x) => *x == 0.0,
        }
    }
}

fn parse_coord(s: &str) -> Option<Coord> {
    if s.contains(['.', 'e', 'E']) {
        s.parse::<f64>().ok().filter(|x| x.is_finite()).map(Coord::Float)
    } else {
        parse_rat(s).map(Coord::Exact)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealVector {
    pub name: String,
    pub coords: Vec<Coord>,
}

impl RealVector {
    pub fn is_exact(&self) -> bool {
        self.coords.iter().all(|c| matches!(c, Coord::Exact(_)))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(Coord::to_f64).collect()
    }

    fn exact(&self) -> Option<Vec<Rat>> {
        self.coords
            .iter()
            .map(|c| match c {
                Coord::Exact(r) => Some(r.clone()),
                Coord::Float(_) => None,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    pub dim: usize,
    pub vectors: Vec<RealVector>,
}

impl Realization {
    pub fn new(dim: usize, vectors: Vec<RealVector>) -> Result<Realization, RealizationError> {
        let mut seen = BTreeSet::new();
        for v in &vectors {
            if v.coords.len() != dim {
                return Err(RealizationError::Dimension {
                    name: v.name.clone(),
                    found: v.coords.len(),
                    expected: dim,
                });
            }
            if v.coords.iter().all(Coord::is_zero) {
                return Err(RealizationError::ZeroVector(v.name.clone()));
            }
            if !seen.insert(v.name.as_str()) {
                return Err(RealizationError::DuplicateVector(v.name.clone()));
            }
        }
        Ok(Realization { dim, vectors })
    }

    pub fn get(&self, name: &str) -> Option<&RealVector> {
        self.vectors.iter().find(|v| v.name == name)
    }

    pub fn is_exact(&self) -> bool {
        self.vectors.iter().all(RealVector::is_exact)
    }
}

/// Reads `dim <d>` followed by `vector <name> <c1> ... <cd>` lines.
pub fn parse_vectors(text: &str) -> Result<Realization, RealizationError> {
    let mut dim = None;
    let mut vectors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let mut toks = l.split_whitespace();
        let syntax = |message: String| RealizationError::Syntax { line, message };
        match toks.next() {
            Some("dim") => {
                let d: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|&d| d > 0)
                    .ok_or_else(|| syntax("`dim` needs a positive integer".into()))?;
                if dim.replace(d).is_some() {
                    return Err(syntax("second `dim` header".into()));
                }
            }
            Some("vector") => {
                if dim.is_none() {
                    return Err(RealizationError::NoDimension);
                }
                let name = toks
                    .next()
                    .ok_or_else(|| syntax("`vector` needs a name".into()))?;
                let coords = toks
                    .map(|t| parse_coord(t).ok_or_else(|| syntax(format!("bad coordinate `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                vectors.push(RealVector {
                    name: name.to_string(),
                    coords,
                });
            }
            Some(other) => return Err(syntax(format!("unknown keyword `{other}`"))),
            None => unreachable!(),
        }
    }
    Realization::new(dim.ok_or(RealizationError::NoDimension)?, vectors)
}

/// Outcome of [`verify_realization`]. It passes when there are no
/// non-orthogonal pairs and no collinear pairs; size warnings are advisory.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RealizationReport {
    pub exact: bool,
    /// Atoms sharing a context whose vectors are not orthogonal, with the
    /// inner product.
    pub non_orthogonal: Vec<(String, String, f64)>,
    /// Contexts (by index) whose size differs from the dimension.
    pub size_warnings: Vec<(usize, usize)>,
    /// Distinct atoms realized by the same ray.
    pub collinear: Vec<(String, String)>,
}

impl RealizationReport {
    pub fn passed(&self) -> bool {
        self.non_orthogonal.is_empty() && self.collinear.is_empty()
    }
}

impl fmt::Display for RealizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = if self.exact { "exact" } else { "tolerance" };
        writeln!(f, "mode: {mode}")?;
        for (a, b, ip) in &self.non_orthogonal {
            writeln!(f, "not orthogonal: {a} {b} (inner product {ip:e})")?;
        }
        for (c, n) in &self.size_warnings {
            writeln!(f, "warning: context {} has {n} atoms", c + 1)?;
        }
        for (a, b) in &self.collinear {
            writeln!(f, "same ray: {a} {b}")?;
        }
        write!(f, "{}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Pairwise geometry of a vector list, exact or in doubles.
enum Gram {
    Exact(Vec<Vec<Rat>>),
    Float(Vec<Vec<f64>>),
}

impl Gram {
    fn new(vectors: &[&RealVector], exact: bool) -> Gram {
        if exact {
            let xs: Vec<Vec<Rat>> = vectors.iter().map(|v| v.exact().unwrap()).collect();
            Gram::Exact(
                xs.par_iter()
                    .map(|x| xs.iter().map(|y| dot(x, y)).collect())
                    .collect(),
            )
        } else {
            let xs: Vec<Vec<f64>> = vectors.iter().map(|v| v.to_f64()).collect();
            Gram::Float(
                xs.par_iter()
                    .map(|x| xs.iter().map(|y| x.iter().zip(y).map(|(a, b)| a * b).sum()).collect())
                    .collect(),
            )
        }
    }

    fn inner(&self, i: usize, j: usize) -> f64 {
        match self {
            Gram::Exact(g) => g[i][j].to_f64().unwrap_or(f64::NAN),
            Gram::Float(g) => g[i][j],
        }
    }

    fn orthogonal(&self, i: usize, j: usize, tol: f64) -> bool {
        match self {
            Gram::Exact(g) => g[i][j].is_zero(),
            Gram::Float(g) => g[i][j].abs() <= tol,
        }
    }

    /// `⟨x|y⟩² = ⟨x|x⟩⟨y|y⟩`, relative to the norms.
    fn collinear(&self, i: usize, j: usize, tol: f64) -> bool {
        match self {
            Gram::Exact(g) => &g[i][j] * &g[i][j] == &g[i][i] * &g[j][j],
            Gram::Float(g) => {
                let n = g[i][i] * g[j][j];
                (g[i][j] * g[i][j] - n).abs() <= tol * n
            }
        }
    }
}

fn check_tol(tol: f64) -> Result<(), RealizationError> {
    if tol.is_nan() || tol < 0.0 {
        return Err(RealizationError::BadTolerance(tol));
    }
    Ok(())
}

fn exact_mode(vectors: &[&RealVector], tol: f64) -> Result<bool, RealizationError> {
    match vectors.iter().find(|v| !v.is_exact()) {
        None => Ok(true),
        Some(v) if tol == 0.0 => Err(RealizationError::InexactAtZeroTolerance(v.name.clone())),
        Some(_) => Ok(false),
    }
}

/// Checks that every context of `logic` is realized by mutually orthogonal
/// vectors and that distinct atoms get distinct rays.
pub fn verify_realization(
    logic: &Logic,
    real: &Realization,
    tol: f64,
) -> Result<RealizationReport, RealizationError> {
    check_tol(tol)?;
    let vectors: Vec<&RealVector> = logic
        .atoms
        .iter()
        .map(|a| real.get(&a.name).ok_or_else(|| RealizationError::MissingVector(a.name.clone())))
        .collect::<Result<_, _>>()?;
    let exact = exact_mode(&vectors, tol)?;
    let gram = Gram::new(&vectors, exact);
    let mut report = RealizationReport {
        exact,
        ..Default::default()
    };
    for (ci, c) in logic.contexts.iter().enumerate() {
        if c.atoms.len() != real.dim {
            report.size_warnings.push((ci, c.atoms.len()));
        }
        for (k, &i) in c.atoms.iter().enumerate() {
            for &j in &c.atoms[k + 1..] {
                if !gram.orthogonal(i, j, tol) {
                    let pair = (logic.atom_name(i).to_string(), logic.atom_name(j).to_string(), gram.inner(i, j));
                    if !report.non_orthogonal.iter().any(|p| p.0 == pair.0 && p.1 == pair.1) {
                        report.non_orthogonal.push(pair);
                    }
                }
            }
        }
    }
    let n = vectors.len();
    for i in 0..n {
        for j in i + 1..n {
            if gram.collinear(i, j, tol) {
                report
                    .collinear
                    .push((logic.atom_name(i).to_string(), logic.atom_name(j).to_string()));
            }
        }
    }
    Ok(report)
}

/// The logic whose contexts are the maximal cliques (of size at least 2) of
/// the orthogonality graph. Atoms keep the vector order; contexts are sorted
/// by their atom indices.
pub fn derive_logic(
    name: &str,
    real: &Realization,
    tol: f64,
) -> Result<Logic, RealizationError> {
    check_tol(tol)?;
    let vectors: Vec<&RealVector> = real.vectors.iter().collect();
    let exact = exact_mode(&vectors, tol)?;
    let gram = Gram::new(&vectors, exact);
    let n = vectors.len();
    let adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && gram.orthogonal(i, j, tol)).collect())
        .collect();
    let cliques = maximal_cliques(&adj);
    let contexts: Vec<Vec<&str>> = cliques
        .iter()
        .filter(|c| c.len() >= 2)
        .map(|c| c.iter().map(|&i| vectors[i].name.as_str()).collect())
        .collect();
    let mut logic = Logic::from_contexts(name, &contexts)?;
    // Renumber atoms to follow the vector list rather than first appearance.
    let order: HashMap<&str, usize> = vectors.iter().enumerate().map(|(i, v)| (v.name.as_str(), i)).collect();
    let mut atoms: Vec<_> = logic.atoms.clone();
    atoms.sort_by_key(|a| order[a.name.as_str()]);
    let remap: HashMap<usize, usize> = atoms.iter().enumerate().map(|(new, a)| (a.index, new)).collect();
    for (new, a) in atoms.iter_mut().enumerate() {
        a.index = new;
    }
    for c in &mut logic.contexts {
        c.atoms = c.atoms.iter().map(|a| remap[a]).collect();
    }
    logic.atoms = atoms;
    Ok(logic)
}

/// Bron–Kerbosch with pivoting; cliques come back sorted.
pub fn maximal_cliques(adj: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    fn go(
        adj: &[BTreeSet<usize>],
        r: &mut Vec<usize>,
        p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = *p
            .union(&x)
            .max_by_key(|&&u| (p.intersection(&adj[u]).count(), std::cmp::Reverse(u)))
            .unwrap();
        let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
        let mut p = p;
        for v in candidates {
            r.push(v);
            go(
                adj,
                r,
                p.intersection(&adj[v]).copied().collect(),
                x.intersection(&adj[v]).copied().collect(),
                out,
            );
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    go(adj, &mut Vec::new(), (0..adj.len()).collect(), BTreeSet::new(), &mut out);
    out.sort();
    out
}
