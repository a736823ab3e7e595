//! Correlation-polytope vertices: term tables evaluated on two-valued states,
//! and the sign-assignment vertices of noncontextual product scenarios.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::builtin::{logic_text, scenario_file, terms_text, SCENARIO_CATALOG};
use crate::hull::format::{parse_h, parse_v, FormatError};
use crate::hull::{rat, HRep, VRep};
use crate::logic::{enumerate_states, parity_certificate, parse_logic, Logic, LogicError, ParityCertificate};

/// Largest atom count swept by [`gen_noncontextual_vertices`] unless the
/// caller raises it.
pub const NONCONTEXTUAL_ATOM_LIMIT: usize = 26;

#[derive(Debug, Error, PartialEq)]
pub enum VertexError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown atom `{atom}`")]
    UnknownAtom { line: usize, atom: String },
    #[error("line {line}: label `{label}` used twice")]
    DuplicateLabel { line: usize, label: String },
    #[error("line {line}: atoms of a joint term must be distinct")]
    RepeatedAtom { line: usize },
    #[error("line {line}: atoms `{atoms}` do not form a context")]
    NotAContext { line: usize, atoms: String },
    #[error("term `{0}` is a context product; use the noncontextual generator")]
    ContextProduct(String),
    #[error("term table is empty, the polytope would be zero-dimensional")]
    NoTerms,
    #[error("logic `{logic}` has no two-valued states{}", certificate_note(.certificate))]
    NoStates {
        logic: String,
        certificate: Option<ParityCertificate>,
    },
    #[error("{atoms} atoms exceed the sweep limit of {limit}")]
    TooManyAtoms { atoms: usize, limit: usize },
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("scenario catalog: {0}")]
    Catalog(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Format(#[from] FormatError),
}

fn certificate_note(c: &Option<ParityCertificate>) -> String {
    match c {
        Some(c) => format!(" ({c})"),
        None => String::new(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermKind {
    Prob,
    JointProb,
    Expect,
    JointExpect,
    ContextProduct,
}

impl TermKind {
    fn parse(s: &str) -> Option<TermKind> {
        Some(match s {
            "prob" => TermKind::Prob,
            "joint_prob" => TermKind::JointProb,
            "expect" => TermKind::Expect,
            "joint_expect" => TermKind::JointExpect,
            "context_product" => TermKind::ContextProduct,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            TermKind::Prob => "prob",
            TermKind::JointProb => "joint_prob",
            TermKind::Expect => "expect",
            TermKind::JointExpect => "joint_expect",
            TermKind::ContextProduct => "context_product",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSpec {
    pub label: String,
    pub kind: TermKind,
    /// Atom indices into the logic the table was parsed against.
    pub atoms: Vec<usize>,
}

impl TermSpec {
    /// Value on a 0/1 assignment.
    pub fn eval(&self, v: impl Fn(usize) -> bool) -> i64 {
        let pm = |a: usize| if v(a) { 1 } else { -1 };
        match self.kind {
            TermKind::Prob | TermKind::JointProb => self.atoms.iter().all(|&a| v(a)) as i64,
            TermKind::Expect | TermKind::JointExpect | TermKind::ContextProduct => {
                self.atoms.iter().map(|&a| pm(a)).product()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermTable {
    pub terms: Vec<TermSpec>,
}

impl TermTable {
    pub fn labels(&self) -> Vec<&str> {
        self.terms.iter().map(|t| t.label.as_str()).collect()
    }
}

impl fmt::Display for TermTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels().join(", "))
    }
}

/// Reads `term <label> <kind> <atoms...>` lines against `logic`.
pub fn parse_terms(text: &str, logic: &Logic) -> Result<TermTable, VertexError> {
    let mut terms: Vec<TermSpec> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        let syntax = |message: &str| VertexError::Syntax {
            line,
            message: message.to_string(),
        };
        if toks[0] != "term" {
            return Err(syntax(&format!("unknown keyword `{}`", toks[0])));
        }
        if toks.len() < 4 {
            return Err(syntax("expected `term <label> <kind> <atoms...>`"));
        }
        let label = toks[1].to_string();
        let kind = TermKind::parse(toks[2]).ok_or_else(|| syntax(&format!("unknown term kind `{}`", toks[2])))?;
        let atoms = toks[3..]
            .iter()
            .map(|a| {
                logic.atom_index(a).ok_or_else(|| VertexError::UnknownAtom {
                    line,
                    atom: a.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let single = matches!(kind, TermKind::Prob | TermKind::Expect);
        if single && atoms.len() != 1 {
            return Err(syntax(&format!("`{}` takes exactly one atom", kind.name())));
        }
        if atoms.iter().collect::<BTreeSet<_>>().len() != atoms.len() {
            return Err(VertexError::RepeatedAtom { line });
        }
        if kind == TermKind::ContextProduct && logic.find_context(&atoms).is_none() {
            return Err(VertexError::NotAContext {
                line,
                atoms: toks[3..].join(" "),
            });
        }
        if terms.iter().any(|t| t.label == label) {
            return Err(VertexError::DuplicateLabel { line, label });
        }
        terms.push(TermSpec { label, kind, atoms });
    }
    Ok(TermTable { terms })
}

/// One vertex per two-valued state of `logic`, in state order. Duplicates
/// are kept; the hull ignores them.
pub fn gen_state_vertices(logic: &Logic, table: &TermTable) -> Result<VRep, VertexError> {
    if table.terms.is_empty() {
        return Err(VertexError::NoTerms);
    }
    if let Some(t) = table.terms.iter().find(|t| t.kind == TermKind::ContextProduct) {
        return Err(VertexError::ContextProduct(t.label.clone()));
    }
    let states = enumerate_states(logic);
    if states.is_empty() {
        return Err(VertexError::NoStates {
            logic: logic.name.clone(),
            certificate: parity_certificate(logic),
        });
    }
    let points = states
        .iter()
        .map(|s| table.terms.iter().map(|t| rat::int(t.eval(|a| s.get(a)))).collect())
        .collect();
    Ok(VRep {
        dim: table.terms.len(),
        points,
    })
}

/// Per-context products of every ±1 assignment to the atoms, ignoring
/// admissibility. Coordinates follow the context order; the result is
/// deduplicated and sorted.
pub fn gen_noncontextual_vertices(logic: &Logic, atom_limit: usize) -> Result<VRep, VertexError> {
    let n = logic.atom_count();
    if n > atom_limit || n >= 64 {
        return Err(VertexError::TooManyAtoms {
            atoms: n,
            limit: atom_limit.min(63),
        });
    }
    let masks: Vec<u64> = logic
        .contexts
        .iter()
        .map(|c| c.atoms.iter().fold(0u64, |m, &a| m | 1 << a))
        .collect();
    // Bit set = atom takes −1; a context product is −1 iff an odd number of
    // its atoms do.
    let total = 1u64 << n;
    let chunk = 1u64 << n.min(16);
    let sets: Vec<BTreeSet<u64>> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|k| {
            let mut seen = BTreeSet::new();
            for m in k * chunk..((k + 1) * chunk).min(total) {
                let signs = masks
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, cm)| acc | (((m & cm).count_ones() as u64 & 1) << i));
                seen.insert(signs);
            }
            seen
        })
        .collect();
    let all: BTreeSet<Vec<i64>> = sets
        .into_iter()
        .flatten()
        .map(|s| (0..masks.len()).map(|i| if s >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect();
    VRep::from_ints(&all.into_iter().collect::<Vec<_>>()).map_err(|_| VertexError::NoTerms)
}

/// Where a scenario's vertices come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexSource {
    States { logic: String, terms: String },
    Noncontextual { logic: String },
}

/// A bundled hull problem with its expected answer.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    /// Bundled V-representation file, when the scenario ships one.
    pub ext: Option<String>,
    pub source: VertexSource,
    pub golden: HRep,
    /// Expected inequality count when `golden` is only a sample.
    pub facets: Option<usize>,
}

impl Scenario {
    pub fn is_partial(&self) -> bool {
        self.facets.is_some()
    }

    /// The bundled vertex list if any, otherwise the generated one.
    pub fn vertices(&self) -> Result<VRep, VertexError> {
        match &self.ext {
            Some(f) => Ok(parse_v(scenario_file(f).ok_or_else(|| VertexError::Catalog(format!("missing file {f}")))?)?),
            None => self.generate(),
        }
    }

    /// Vertices regenerated from the logic (and term table).
    pub fn generate(&self) -> Result<VRep, VertexError> {
        match &self.source {
            VertexSource::States { logic, terms } => {
                let l = builtin_logic(logic)?;
                let t = parse_terms(
                    terms_text(terms).ok_or_else(|| VertexError::Catalog(format!("missing terms {terms}")))?,
                    &l,
                )?;
                gen_state_vertices(&l, &t)
            }
            VertexSource::Noncontextual { logic } => {
                gen_noncontextual_vertices(&builtin_logic(logic)?, NONCONTEXTUAL_ATOM_LIMIT)
            }
        }
    }

    /// Compares a computed hull with the golden rows: full set equality, or
    /// for a sampled golden, the facet count plus containment of the sample.
    pub fn check(&self, got: &HRep) -> GoldenCheck {
        let mut c = GoldenCheck::compare(got, &self.golden);
        if let Some(n) = self.facets {
            c.extra.clear();
            c.expected_count = Some(n);
            c.found_count = got.inequalities.len();
        }
        c
    }
}

/// Symmetric difference between a computed and an expected H-representation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GoldenCheck {
    /// Expected rows that were not produced, marked `true` for linearities.
    pub missing: Vec<(bool, crate::hull::Constraint)>,
    /// Produced rows that were not expected.
    pub extra: Vec<(bool, crate::hull::Constraint)>,
    pub expected_count: Option<usize>,
    pub found_count: usize,
}

impl GoldenCheck {
    pub fn compare(got: &HRep, want: &HRep) -> GoldenCheck {
        let (gi, gl) = got.row_sets();
        let (wi, wl) = want.row_sets();
        let tag = |lin: bool| move |c: &crate::hull::Constraint| (lin, c.clone());
        GoldenCheck {
            missing: wi.difference(&gi).map(tag(false)).chain(wl.difference(&gl).map(tag(true))).collect(),
            extra: gi.difference(&wi).map(tag(false)).chain(gl.difference(&wl).map(tag(true))).collect(),
            expected_count: None,
            found_count: got.inequalities.len(),
        }
    }

    pub fn passed(&self) -> bool {
        self.missing.is_empty()
            && self.extra.is_empty()
            && self.expected_count.is_none_or(|n| n == self.found_count)
    }
}

impl fmt::Display for GoldenCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.expected_count {
            writeln!(f, "facets: expected {n}, found {}", self.found_count)?;
        }
        let kind = |lin: bool| if lin { "linearity" } else { "inequality" };
        for (lin, c) in &self.missing {
            writeln!(f, "missing {}: {c}", kind(*lin))?;
        }
        for (lin, c) in &self.extra {
            writeln!(f, "unexpected {}: {c}", kind(*lin))?;
        }
        write!(f, "{}", if self.passed() { "golden: match" } else { "golden: MISMATCH" })
    }
}

pub fn builtin_logic(name: &str) -> Result<Logic, VertexError> {
    let text = logic_text(name).ok_or_else(|| VertexError::Catalog(format!("unknown logic {name}")))?;
    Ok(parse_logic(text)?)
}

/// Names in the bundled scenario catalog, in catalog order.
pub fn scenario_names() -> Vec<String> {
    catalog_lines().filter_map(|l| l.split_whitespace().nth(1).map(str::to_string)).collect()
}

fn catalog_lines() -> impl Iterator<Item = &'static str> {
    SCENARIO_CATALOG
        .lines()
        .map(str::trim)
        .filter(|l| l.starts_with("scenario "))
}

pub fn builtin_scenario(name: &str) -> Result<Scenario, VertexError> {
    let line = catalog_lines()
        .find(|l| l.split_whitespace().nth(1) == Some(name))
        .ok_or_else(|| VertexError::UnknownScenario(name.to_string()))?;
    let bad = |m: &str| VertexError::Catalog(format!("{name}: {m}"));
    let mut ext = None;
    let mut logic = None;
    let mut terms = None;
    let mut noncontextual = None;
    let mut golden = None;
    let mut facets = None;
    for tok in line.split_whitespace().skip(2) {
        if tok == "partial" {
            continue;
        }
        let (k, v) = tok.split_once(':').ok_or_else(|| bad(&format!("bad field `{tok}`")))?;
        let v = v.to_string();
        match k {
            "ext" => ext = Some(v),
            "logic" => logic = Some(v),
            "terms" => terms = Some(v),
            "noncontextual" => noncontextual = Some(v),
            "golden" => golden = Some(v),
            "facets" => facets = Some(v.parse().map_err(|_| bad("bad facet count"))?),
            _ => return Err(bad(&format!("unknown field `{k}`"))),
        }
    }
    let source = match (logic, terms, noncontextual) {
        (Some(logic), Some(terms), None) => VertexSource::States { logic, terms },
        (None, None, Some(logic)) => VertexSource::Noncontextual { logic },
        _ => return Err(bad("needs `logic:` and `terms:`, or `noncontextual:`")),
    };
    let golden = golden.ok_or_else(|| bad("no golden file"))?;
    let text = scenario_file(&golden).ok_or_else(|| bad(&format!("missing file {golden}")))?;
    Ok(Scenario {
        name: name.to_string(),
        ext,
        source,
        golden: parse_h(text)?,
        facets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::rat::int;

    fn epr22() -> Logic {
        builtin_logic("epr-2x2").unwrap()
    }

    #[test]
    fn term_values() {
        let l = epr22();
        let t = parse_terms("term p13 joint_prob a1 a3\nterm E1 expect a1\nterm E13 joint_expect a1 a3\n", &l).unwrap();
        let v = |a: usize| l.atom_name(a) == "a1";
        let vals: Vec<i64> = t.terms.iter().map(|t| t.eval(v)).collect();
        assert_eq!(vals, vec![0, 1, -1]);
    }

    #[test]
    fn bad_term_tables() {
        let l = epr22();
        assert!(matches!(parse_terms("term x prob zz\n", &l), Err(VertexError::UnknownAtom { line: 1, .. })));
        assert!(matches!(parse_terms("term x joint_prob a1 a1\n", &l), Err(VertexError::RepeatedAtom { line: 1 })));
        assert!(matches!(
            parse_terms("term x prob a1\nterm x prob a2\n", &l),
            Err(VertexError::DuplicateLabel { line: 2, .. })
        ));
        assert!(matches!(parse_terms("term x prob a1 a2\n", &l), Err(VertexError::Syntax { .. })));
        assert!(matches!(parse_terms("term x context_product a1 a3\n", &l), Err(VertexError::NotAContext { .. })));
        assert!(matches!(parse_terms("term x sum a1\n", &l), Err(VertexError::Syntax { .. })));
        let t = parse_terms("term x context_product a1 a1'\n", &l).unwrap();
        assert_eq!(gen_state_vertices(&l, &t), Err(VertexError::ContextProduct("x".into())));
        assert_eq!(gen_state_vertices(&l, &TermTable { terms: vec![] }), Err(VertexError::NoTerms));
    }

    #[test]
    fn kochen_specker_logic_has_no_vertices() {
        let l = builtin_logic("cabello18").unwrap();
        let t = parse_terms("term p prob a1\n", &l).unwrap();
        let err = gen_state_vertices(&l, &t).unwrap_err();
        assert!(matches!(err, VertexError::NoStates { certificate: Some(_), .. }));
        assert!(err.to_string().contains("no two-valued states"));
    }

    #[test]
    fn single_context_products() {
        let l = Logic::from_contexts("c", &[vec!["x", "y", "z"]]).unwrap();
        let v = gen_noncontextual_vertices(&l, NONCONTEXTUAL_ATOM_LIMIT).unwrap();
        assert_eq!(v.points, vec![vec![int(-1)], vec![int(1)]]);
        assert!(matches!(gen_noncontextual_vertices(&l, 2), Err(VertexError::TooManyAtoms { atoms: 3, .. })));
    }

    #[test]
    fn catalog_parses() {
        let names = scenario_names();
        assert!(names.len() >= 19);
        for n in &names {
            builtin_scenario(n).unwrap();
        }
        assert!(matches!(builtin_scenario("nope"), Err(VertexError::UnknownScenario(_))));
    }
}
