//! Bundled data files: logics, vector realizations, term tables, hull
//! scenarios and operator presets. Everything is compiled into the binary,
//! and the files themselves live under `data/` for inspection.

/// Logic files by name.
pub const LOGICS: &[(&str, &str)] = &[
    ("cabello18", include_str!("../data/logics/cabello18.logic")),
    ("epr-2x2", include_str!("../data/logics/epr-2x2.logic")),
    ("epr-2x3", include_str!("../data/logics/epr-2x3.logic")),
    ("firefly", include_str!("../data/logics/firefly.logic")),
    ("gamma1", include_str!("../data/logics/gamma1.logic")),
    ("gamma3-tkadlec", include_str!("../data/logics/gamma3-tkadlec.logic")),
    ("gamma3", include_str!("../data/logics/gamma3.logic")),
    ("one-var", include_str!("../data/logics/one-var.logic")),
    ("pentagon", include_str!("../data/logics/pentagon.logic")),
    ("specker-bug", include_str!("../data/logics/specker-bug.logic")),
    ("three-var", include_str!("../data/logics/three-var.logic")),
    ("two-var", include_str!("../data/logics/two-var.logic")),
    ("yu-oh", include_str!("../data/logics/yu-oh.logic")),
];

/// Vector realizations by name.
pub const VECTORS: &[(&str, &str)] = &[
    ("cabello18", include_str!("../data/vectors/cabello18.vec")),
    ("gamma1", include_str!("../data/vectors/gamma1.vec")),
    ("gamma3", include_str!("../data/vectors/gamma3.vec")),
    ("pentagon-quartic", include_str!("../data/vectors/pentagon-quartic.vec")),
    ("pentagon", include_str!("../data/vectors/pentagon.vec")),
    ("specker-bug", include_str!("../data/vectors/specker-bug.vec")),
    ("yu-oh-full", include_str!("../data/vectors/yu-oh-full.vec")),
    ("yu-oh", include_str!("../data/vectors/yu-oh.vec")),
];

/// Term tables by name.
pub const TERMS: &[(&str, &str)] = &[
    ("bub-stairs", include_str!("../data/terms/bub-stairs.terms")),
    ("bug-edge-expect", include_str!("../data/terms/bug-edge-expect.terms")),
    ("bug-prob", include_str!("../data/terms/bug-prob.terms")),
    ("bwf", include_str!("../data/terms/bwf.terms")),
    ("chsh-expect", include_str!("../data/terms/chsh-expect.terms")),
    ("epr-2x3-full", include_str!("../data/terms/epr-2x3-full.terms")),
    ("epr-2x3-joints", include_str!("../data/terms/epr-2x3-joints.terms")),
    ("kcbs", include_str!("../data/terms/kcbs.terms")),
    ("one-var-expect", include_str!("../data/terms/one-var-expect.terms")),
    ("one-var-prob", include_str!("../data/terms/one-var-prob.terms")),
    ("pentagon-all-pair-expect", include_str!("../data/terms/pentagon-all-pair-expect.terms")),
    ("pentagon-nonintertwining", include_str!("../data/terms/pentagon-nonintertwining.terms")),
    ("pentagon-prob", include_str!("../data/terms/pentagon-prob.terms")),
    ("three-var-expect", include_str!("../data/terms/three-var-expect.terms")),
    ("three-var-prob", include_str!("../data/terms/three-var-prob.terms")),
    ("two-var-expect", include_str!("../data/terms/two-var-expect.terms")),
    ("two-var-prob", include_str!("../data/terms/two-var-prob.terms")),
];

/// DD documents referenced by the scenario catalog, by file name.
pub const SCENARIO_FILES: &[(&str, &str)] = &[
    ("bub-stairs.ext", include_str!("../data/scenarios/bub-stairs.ext")),
    ("bub-stairs.ine", include_str!("../data/scenarios/bub-stairs.ine")),
    ("bug-edge-expect.ext", include_str!("../data/scenarios/bug-edge-expect.ext")),
    ("bug-edge-expect.ine", include_str!("../data/scenarios/bug-edge-expect.ine")),
    ("bug-noncontextual.ext", include_str!("../data/scenarios/bug-noncontextual.ext")),
    ("bug-noncontextual.ine", include_str!("../data/scenarios/bug-noncontextual.ine")),
    ("bug-prob.ext", include_str!("../data/scenarios/bug-prob.ext")),
    ("bug-prob.ine", include_str!("../data/scenarios/bug-prob.ine")),
    ("bwf-2x2.ext", include_str!("../data/scenarios/bwf-2x2.ext")),
    ("bwf-2x2.ine", include_str!("../data/scenarios/bwf-2x2.ine")),
    ("cabello-contextual-vertices.ext", include_str!("../data/scenarios/cabello-contextual-vertices.ext")),
    ("cabello-contextual.ine", include_str!("../data/scenarios/cabello-contextual.ine")),
    ("chsh-2x2.ext", include_str!("../data/scenarios/chsh-2x2.ext")),
    ("chsh-2x2.ine", include_str!("../data/scenarios/chsh-2x2.ine")),
    ("epr-2x3-full.ext", include_str!("../data/scenarios/epr-2x3-full.ext")),
    ("epr-2x3-full.ine", include_str!("../data/scenarios/epr-2x3-full.ine")),
    ("epr-2x3-joints.ine", include_str!("../data/scenarios/epr-2x3-joints.ine")),
    ("one-var.ext", include_str!("../data/scenarios/one-var.ext")),
    ("one-var.ine", include_str!("../data/scenarios/one-var.ine")),
    ("pentagon-all-pair-expect.ext", include_str!("../data/scenarios/pentagon-all-pair-expect.ext")),
    ("pentagon-all-pair-expect.ine", include_str!("../data/scenarios/pentagon-all-pair-expect.ine")),
    ("pentagon-noncontextual.ext", include_str!("../data/scenarios/pentagon-noncontextual.ext")),
    ("pentagon-noncontextual.ine", include_str!("../data/scenarios/pentagon-noncontextual.ine")),
    ("pentagon-nonintertwining.ext", include_str!("../data/scenarios/pentagon-nonintertwining.ext")),
    ("pentagon-nonintertwining.ine", include_str!("../data/scenarios/pentagon-nonintertwining.ine")),
    ("pentagon-pair-expect-kcbs.ext", include_str!("../data/scenarios/pentagon-pair-expect-kcbs.ext")),
    ("pentagon-pair-expect-kcbs.ine", include_str!("../data/scenarios/pentagon-pair-expect-kcbs.ine")),
    ("pentagon-prob.ext", include_str!("../data/scenarios/pentagon-prob.ext")),
    ("pentagon-prob.ine", include_str!("../data/scenarios/pentagon-prob.ine")),
    ("three-var-expect.ext", include_str!("../data/scenarios/three-var-expect.ext")),
    ("three-var-expect.ine", include_str!("../data/scenarios/three-var-expect.ine")),
    ("three-var-prob.ext", include_str!("../data/scenarios/three-var-prob.ext")),
    ("three-var-prob.ine", include_str!("../data/scenarios/three-var-prob.ine")),
    ("two-var-expect.ext", include_str!("../data/scenarios/two-var-expect.ext")),
    ("two-var-expect.ine", include_str!("../data/scenarios/two-var-expect.ine")),
    ("two-var-prob.ext", include_str!("../data/scenarios/two-var-prob.ext")),
    ("two-var-prob.ine", include_str!("../data/scenarios/two-var-prob.ine")),
];

pub const SCENARIO_CATALOG: &str = include_str!("../data/scenarios/catalog");

/// Realizations that serve a logic under another name.
const VECTOR_ALIASES: &[(&str, &str)] = &[("gamma3-tkadlec", "gamma3")];

fn find(table: &'static [(&'static str, &'static str)], name: &str) -> Option<&'static str> {
    table.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
}

pub fn logic_text(name: &str) -> Option<&'static str> {
    find(LOGICS, name)
}

pub fn vector_text(name: &str) -> Option<&'static str> {
    let name = find(VECTOR_ALIASES, name).unwrap_or(name);
    find(VECTORS, name)
}

pub fn terms_text(name: &str) -> Option<&'static str> {
    find(TERMS, name)
}

pub fn scenario_file(name: &str) -> Option<&'static str> {
    find(SCENARIO_FILES, name)
}

pub fn operator_text(name: &str) -> Option<&'static str> {
    find(OPERATORS, name)
}

pub fn names(table: &'static [(&'static str, &'static str)]) -> Vec<&'static str> {
    table.iter().map(|(k, _)| *k).collect()
}

/// Operator expressions by name.
pub const OPERATORS: &[(&str, &str)] = &[
    ("cabelloT", include_str!("../data/operators/cabelloT.op")),
    ("chsh", include_str!("../data/operators/chsh.op")),
    ("kcbs", include_str!("../data/operators/kcbs.op")),
];
