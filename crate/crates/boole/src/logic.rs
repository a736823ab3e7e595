//! Finite quantum logics as pastings of contexts, and the classical structures
//! they support: two-valued states, colorings, parity certificates and
//! partition-logic realizations.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: duplicate context")]
    DuplicateContext { line: usize },
    #[error("line {line}: context needs at least 2 atoms, found {size}")]
    ContextTooSmall { line: usize, size: usize },
    #[error("line {line}: atom `{atom}` repeated within one context")]
    RepeatedAtom { line: usize, atom: String },
    #[error("logic has no contexts")]
    Empty,
    #[error("atom `{0}` lies in no context")]
    OrphanAtom(String),
    #[error("state list is empty")]
    NoStates,
    #[error("{k} colors cannot color a context of size {max}")]
    TooFewColors { k: usize, max: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub index: usize,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub atoms: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Logic {
    pub name: String,
    pub atoms: Vec<Atom>,
    pub contexts: Vec<Context>,
}

impl Logic {
    /// Builds a logic from named contexts; atoms are registered in order of
    /// first appearance.
    pub fn from_contexts<S: AsRef<str>>(
        name: &str,
        contexts: &[Vec<S>],
    ) -> Result<Logic, LogicError> {
        let mut b = Builder::default();
        for (i, c) in contexts.iter().enumerate() {
            let names: Vec<&str> = c.iter().map(|s| s.as_ref()).collect();
            b.push(&names, i + 1)?;
        }
        b.finish(name)
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a.name == name)
    }

    pub fn atom_name(&self, index: usize) -> &str {
        &self.atoms[index].name
    }

    pub fn max_context_size(&self) -> usize {
        self.contexts.iter().map(|c| c.atoms.len()).max().unwrap_or(0)
    }

    /// Index of the context whose atom set equals `atoms`, if any.
    pub fn find_context(&self, atoms: &[usize]) -> Option<usize> {
        let want: BTreeSet<usize> = atoms.iter().copied().collect();
        self.contexts
            .iter()
            .position(|c| c.atoms.iter().copied().collect::<BTreeSet<_>>() == want)
    }

    /// For every atom, the indices of the contexts containing it.
    pub fn atom_contexts(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.atoms.len()];
        for (ci, c) in self.contexts.iter().enumerate() {
            for &a in &c.atoms {
                out[a].push(ci);
            }
        }
        out
    }

    /// Pairs of contexts that share two or more atoms. Accepted, but unusual
    /// for Greechie diagrams, so callers may want to surface them.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.contexts.len() {
            for j in i + 1..self.contexts.len() {
                let a = &self.contexts[i].atoms;
                let shared = self.contexts[j]
                    .atoms
                    .iter()
                    .filter(|x| a.contains(x))
                    .count();
                if shared > 1 {
                    out.push(format!(
                        "contexts {} and {} share {} atoms",
                        i + 1,
                        j + 1,
                        shared
                    ));
                }
            }
        }
        out
    }

    /// Renders the logic in the line-based file format accepted by
    /// [`parse_logic`].
    pub fn to_text(&self) -> String {
        let mut s = format!("logic {}\n", self.name);
        for c in &self.contexts {
            s.push_str("context");
            for &a in &c.atoms {
                s.push(' ');
                s.push_str(&self.atoms[a].name);
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Default)]
struct Builder {
    atoms: Vec<Atom>,
    index: HashMap<String, usize>,
    contexts: Vec<Context>,
    seen: Vec<BTreeSet<usize>>,
}

impl Builder {
    fn push(&mut self, names: &[&str], line: usize) -> Result<(), LogicError> {
        if names.len() < 2 {
            return Err(LogicError::ContextTooSmall {
                line,
                size: names.len(),
            });
        }
        let mut atoms = Vec::with_capacity(names.len());
        for &n in names {
            let next = self.atoms.len();
            let idx = *self.index.entry(n.to_string()).or_insert(next);
            if idx == next {
                self.atoms.push(Atom {
                    index: idx,
                    name: n.to_string(),
                });
            }
            if atoms.contains(&idx) {
                return Err(LogicError::RepeatedAtom {
                    line,
                    atom: n.to_string(),
                });
            }
            atoms.push(idx);
        }
        let set: BTreeSet<usize> = atoms.iter().copied().collect();
        if self.seen.contains(&set) {
            return Err(LogicError::DuplicateContext { line });
        }
        self.seen.push(set);
        self.contexts.push(Context { atoms });
        Ok(())
    }

    fn finish(self, name: &str) -> Result<Logic, LogicError> {
        if self.contexts.is_empty() {
            return Err(LogicError::Empty);
        }
        Ok(Logic {
            name: name.to_string(),
            atoms: self.atoms,
            contexts: self.contexts,
        })
    }
}

/// Parses the line-based logic format:
///
/// ```text
/// logic firefly
/// # comment
/// context a1 a2 a5
/// context a3 a4 a5
/// ```
pub fn parse_logic(text: &str) -> Result<Logic, LogicError> {
    let mut name = String::from("unnamed");
    let mut b = Builder::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut words = body.split_whitespace();
        let Some(kw) = words.next() else { continue };
        let column = body.find(kw).unwrap_or(0) + 1;
        match kw {
            "logic" => {
                let rest: Vec<&str> = words.collect();
                if rest.len() != 1 {
                    return Err(LogicError::Syntax {
                        line,
                        column,
                        message: "expected `logic <name>`".into(),
                    });
                }
                name = rest[0].to_string();
            }
            "context" => {
                let names: Vec<&str> = words.collect();
                b.push(&names, line)?;
            }
            other => {
                return Err(LogicError::Syntax {
                    line,
                    column,
                    message: format!("unknown keyword `{other}`"),
                })
            }
        }
    }
    b.finish(&name)
}

/// A total {0,1} assignment with exactly one 1 in every context.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoValuedState {
    pub values: Vec<bool>,
}

impl TwoValuedState {
    pub fn get(&self, atom: usize) -> bool {
        self.values[atom]
    }

    pub fn bits(&self) -> String {
        self.values.iter().map(|&v| if v { '1' } else { '0' }).collect()
    }

    /// Checks the one-hot rule on every context.
    pub fn is_admissible(&self, logic: &Logic) -> bool {
        logic
            .contexts
            .iter()
            .all(|c| c.atoms.iter().filter(|&&a| self.values[a]).count() == 1)
    }
}

impl fmt::Display for TwoValuedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bits())
    }
}

const UNSET: i8 = -1;

struct Search<'a> {
    logic: &'a Logic,
    values: Vec<i8>,
    trail: Vec<usize>,
}

impl Search<'_> {
    fn set(&mut self, atom: usize, v: i8) {
        self.values[atom] = v;
        self.trail.push(atom);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            self.values[a] = UNSET;
        }
    }

    /// Sets `atom` to 1 and propagates the one-hot rule to a fixpoint.
    /// Returns false on contradiction.
    fn assign_true(&mut self, atom: usize) -> bool {
        self.set(atom, 1);
        loop {
            let mut changed = false;
            for c in &self.logic.contexts {
                let mut ones = 0;
                let mut open = 0;
                let mut last = 0;
                for &a in &c.atoms {
                    match self.values[a] {
                        1 => ones += 1,
                        UNSET => {
                            open += 1;
                            last = a;
                        }
                        _ => {}
                    }
                }
                match (ones, open) {
                    (2.., _) | (0, 0) => return false,
                    (1, 1..) => {
                        for i in 0..c.atoms.len() {
                            let a = c.atoms[i];
                            if self.values[a] == UNSET {
                                self.values[a] = 0;
                                self.trail.push(a);
                            }
                        }
                        changed = true;
                    }
                    (0, 1) => {
                        self.values[last] = 1;
                        self.trail.push(last);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, out: &mut Vec<TwoValuedState>) {
        // First context (file order) that has no true atom yet.
        let next = self.logic.contexts.iter().find(|c| {
            !c.atoms.iter().any(|&a| self.values[a] == 1)
        });
        let Some(ctx) = next else {
            let values = self.values.iter().map(|&v| v == 1).collect();
            out.push(TwoValuedState { values });
            return;
        };
        let candidates: Vec<usize> = ctx
            .atoms
            .iter()
            .copied()
            .filter(|&a| self.values[a] == UNSET)
            .collect();
        for a in candidates {
            let mark = self.trail.len();
            if self.assign_true(a) {
                self.run(out);
            }
            self.undo(mark);
        }
    }
}

/// All strongly admissible two-valued states, sorted lexicographically by
/// their bit vectors (atom order). The empty list is a valid answer.
pub fn enumerate_states(logic: &Logic) -> Vec<TwoValuedState> {
    let mut s = Search {
        logic,
        values: vec![UNSET; logic.atoms.len()],
        trail: Vec::new(),
    };
    let mut out = Vec::new();
    s.run(&mut out);
    out.sort();
    out.dedup();
    out
}

/// Proof that no two-valued state exists: every atom lies in an even number
/// of contexts while the number of contexts is odd. Summing the one-hot rule
/// over all contexts counts each true atom an even number of times, yet the
/// sum must equal the odd context count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCertificate {
    pub atom_context_counts: Vec<usize>,
    pub context_count: usize,
}

impl fmt::Display for ParityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: BTreeSet<usize> = self.atom_context_counts.iter().copied().collect();
        let counts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "parity certificate: {} contexts (odd); every atom lies in an even number of contexts ({})",
            self.context_count,
            counts.join(", ")
        )
    }
}

pub fn parity_certificate(logic: &Logic) -> Option<ParityCertificate> {
    let counts: Vec<usize> = logic.atom_contexts().iter().map(|c| c.len()).collect();
    let n = logic.contexts.len();
    (n % 2 == 1 && counts.iter().all(|c| c % 2 == 0)).then(|| ParityCertificate {
        atom_context_counts: counts,
        context_count: n,
    })
}

/// Unordered atom pairs `(x, y)`, `x < y`, that no state tells apart. An empty
/// result means the state set is separating.
pub fn unseparated_pairs(logic: &Logic, states: &[TwoValuedState]) -> Vec<(usize, usize)> {
    let n = logic.atoms.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if states.iter().all(|s| s.values[x] == s.values[y]) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Convenience wrapper: true when no pair of atoms is left unseparated.
pub fn is_separating(logic: &Logic, states: &[TwoValuedState]) -> bool {
    unseparated_pairs(logic, states).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub k: usize,
}

impl Coloring {
    /// Colors are distinct within each context, and a context of size `k`
    /// uses every color.
    pub fn is_admissible(&self, logic: &Logic) -> bool {
        logic.contexts.iter().all(|c| {
            let used: BTreeSet<usize> = c.atoms.iter().map(|&a| self.colors[a]).collect();
            used.len() == c.atoms.len() && used.iter().all(|&x| x < self.k)
        })
    }
}

/// All admissible `k`-colorings, in lexicographic order. With
/// `up_to_permutation`, only colorings whose colors first appear in the order
/// 0, 1, 2, ... are returned (one representative per relabeling class).
pub fn enumerate_colorings(
    logic: &Logic,
    k: usize,
    up_to_permutation: bool,
) -> Result<Vec<Coloring>, LogicError> {
    let max = logic.max_context_size();
    if k < max {
        return Err(LogicError::TooFewColors { k, max });
    }
    let n = logic.atoms.len();
    // Neighbours: atoms sharing a context.
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for c in &logic.contexts {
        for &a in &c.atoms {
            for &b in &c.atoms {
                if a != b {
                    nbrs[a].insert(b);
                }
            }
        }
    }
    let nbrs: Vec<Vec<usize>> = nbrs.into_iter().map(|s| s.into_iter().collect()).collect();
    let mut colors = vec![usize::MAX; n];
    let mut out = Vec::new();
    color_rec(0, k, up_to_permutation, 0, &nbrs, &mut colors, &mut out);
    Ok(out)
}

fn color_rec(
    atom: usize,
    k: usize,
    canonical: bool,
    used: usize,
    nbrs: &[Vec<usize>],
    colors: &mut Vec<usize>,
    out: &mut Vec<Coloring>,
) {
    if atom == colors.len() {
        out.push(Coloring {
            colors: colors.clone(),
            k,
        });
        return;
    }
    let limit = if canonical { (used + 1).min(k) } else { k };
    for c in 0..limit {
        if nbrs[atom].iter().any(|&b| colors[b] == c) {
            continue;
        }
        colors[atom] = c;
        color_rec(atom + 1, k, canonical, used.max(c + 1), nbrs, colors, out);
        colors[atom] = usize::MAX;
    }
}

/// Each atom's set of (1-based) state indices assigning it the value 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionLogic {
    pub blocks: Vec<Vec<usize>>,
}

impl PartitionLogic {
    /// The partition induced on the state indices by context `ctx`.
    pub fn context_partition(&self, logic: &Logic, ctx: usize) -> Vec<Vec<usize>> {
        logic.contexts[ctx]
            .atoms
            .iter()
            .map(|&a| self.blocks[a].clone())
            .collect()
    }
}

pub fn partition_logic(
    states: &[TwoValuedState],
    logic: &Logic,
) -> Result<PartitionLogic, LogicError> {
    if states.is_empty() {
        return Err(LogicError::NoStates);
    }
    let blocks = (0..logic.atoms.len())
        .map(|a| {
            states
                .iter()
                .enumerate()
                .filter(|(_, s)| s.values[a])
                .map(|(i, _)| i + 1)
                .collect()
        })
        .collect();
    Ok(PartitionLogic { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn firefly() -> Logic {
        parse_logic("logic firefly\ncontext a1 a2 a5\ncontext a3 a4 a5\n").unwrap()
    }

    #[test]
    fn parses_and_registers_atoms_in_order() {
        let l = firefly();
        let names: Vec<&str> = l.atoms.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["a1", "a2", "a5", "a3", "a4"]);
        assert_eq!(l.contexts.len(), 2);
        assert_eq!(l.name, "firefly");
    }

    #[test]
    fn single_context_line() {
        let l = parse_logic("context a b c").unwrap();
        assert_eq!((l.atoms.len(), l.contexts.len()), (3, 1));
        assert_eq!(enumerate_states(&l).len(), 3);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse_logic("logic x\n  contxt a b\n").unwrap_err();
        assert_eq!(
            e,
            LogicError::Syntax {
                line: 2,
                column: 3,
                message: "unknown keyword `contxt`".into()
            }
        );
        assert_eq!(
            parse_logic("context a b\ncontext b a").unwrap_err(),
            LogicError::DuplicateContext { line: 2 }
        );
        assert_eq!(
            parse_logic("context a").unwrap_err(),
            LogicError::ContextTooSmall { line: 1, size: 1 }
        );
        assert!(matches!(
            parse_logic("context a a b").unwrap_err(),
            LogicError::RepeatedAtom { .. }
        ));
        assert_eq!(parse_logic("# nothing").unwrap_err(), LogicError::Empty);
    }

    #[test]
    fn shared_pair_is_a_warning_not_an_error() {
        let l = parse_logic("context a b c\ncontext a b d").unwrap();
        assert_eq!(l.warnings().len(), 1);
    }

    #[test]
    fn firefly_states_are_sorted() {
        // atom order a1 a2 a5 a3 a4
        let s: Vec<String> = enumerate_states(&firefly()).iter().map(|s| s.bits()).collect();
        assert_eq!(s, ["00100", "01001", "01010", "10001", "10010"]);
    }

    #[test]
    fn parity_certificate_cases() {
        let one = parse_logic("context a b c").unwrap();
        assert!(parity_certificate(&one).is_none());
        let two = parse_logic("context a b\ncontext c d").unwrap();
        assert!(parity_certificate(&two).is_none());
        // triangle of 2-atom contexts: odd cycle, every atom in 2 contexts
        let tri = parse_logic("context a b\ncontext b c\ncontext c a").unwrap();
        let cert = parity_certificate(&tri).unwrap();
        assert_eq!(cert.context_count, 3);
        assert!(enumerate_states(&tri).is_empty());
    }

    #[test]
    fn no_states_leaves_every_pair_unseparated() {
        let tri = parse_logic("context a b\ncontext b c\ncontext c a").unwrap();
        assert_eq!(unseparated_pairs(&tri, &[]).len(), 3);
    }

    #[test]
    fn colorings_of_one_context() {
        let l = parse_logic("context a b c").unwrap();
        assert_eq!(enumerate_colorings(&l, 3, false).unwrap().len(), 6);
        assert_eq!(enumerate_colorings(&l, 3, true).unwrap().len(), 1);
        assert_eq!(
            enumerate_colorings(&l, 2, false).unwrap_err(),
            LogicError::TooFewColors { k: 2, max: 3 }
        );
    }

    #[test]
    fn partition_of_single_context() {
        let l = parse_logic("context a b c d").unwrap();
        let p = partition_logic(&enumerate_states(&l), &l).unwrap();
        // states sorted: 0001, 0010, 0100, 1000
        assert_eq!(p.blocks, vec![vec![4], vec![3], vec![2], vec![1]]);
        assert_eq!(partition_logic(&[], &l).unwrap_err(), LogicError::NoStates);
    }
}
