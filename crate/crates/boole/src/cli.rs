//! The `boole` command line: `states`, `hull`, `quantum` and `verify`.
//!
//! Everything runs through [`run`], which returns the exit code and the text
//! destined for stdout and stderr, so the binary stays a few lines long and
//! the commands can be tested in-process.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | bad input, usage or I/O error |
//! | 2 | the logic has no two-valued states |
//! | 3 | result differs from the golden file |
//! | 4 | realization check failed |

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::builtin::{logic_text, operator_text, scenario_file, terms_text, vector_text};
use crate::hull::format::{parse_h, FormatError};
use crate::hull::rat::{fmt_rat, int};
use crate::hull::{emit_h, emit_v, hull, parse_dd, vertices, DdDocument, HRep, HullError, Rat, VRep};
use crate::logic::{
    enumerate_colorings, enumerate_states, parity_certificate, parse_logic, unseparated_pairs, Logic, LogicError,
};
use crate::quantum::{
    self, bell_state, build_with, eigenvalues, maximize_bound, parse_operator, project_and_bound, OptimizeOptions,
    QuantumError,
};
use crate::realization::{derive_logic, parse_vectors, verify_realization, Realization, RealizationError};
use crate::vertex_gen::{
    builtin_scenario, gen_noncontextual_vertices, gen_state_vertices, parse_terms, GoldenCheck, VertexError,
    NONCONTEXTUAL_ATOM_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO_STATES: i32 = 2;
pub const EXIT_GOLDEN_MISMATCH: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("no bundled {kind} named `{name}`")]
    UnknownBuiltin { kind: &'static str, name: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dd,
}

#[derive(Debug, Parser)]
#[command(name = "boole", version, about = "Two-valued states, correlation polytopes and quantum bounds")]
pub struct Cli {
    /// Worker threads for the parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Expected result (a DD file, or `builtin:FILE`); hull only.
    #[arg(long, global = true)]
    pub golden: Option<String>,
    /// Jitter seed for the optimizer start grid; 0 leaves the grid unjittered.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write a JSON run report (command, input digests, outputs, wall time).
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate the two-valued states (or colorings) of a logic.
    States(StatesArgs),
    /// Convert between vertex and facet descriptions.
    Hull(HullArgs),
    /// Spectrum and bounds of an operator expression.
    Quantum(QuantumArgs),
    /// Check a vector realization, or derive a logic from vectors.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct StatesArgs {
    /// `builtin:NAME` or a logic file.
    pub logic: String,
    /// List atom pairs that no state separates.
    #[arg(long)]
    pub check_separating: bool,
    /// Enumerate admissible colorings with this many colors instead.
    #[arg(long, value_name = "K")]
    pub colors: Option<usize>,
    /// Keep one coloring per relabeling of the colors.
    #[arg(long, requires = "colors")]
    pub up_to_color_permutation: bool,
}

#[derive(Debug, Args)]
pub struct HullArgs {
    /// A DD file (`.ext` or `.ine`), or `builtin:FILE` from the scenario data.
    #[arg(long, conflicts_with_all = ["logic", "scenario"])]
    pub input: Option<String>,
    /// Logic whose two-valued states give the vertices.
    #[arg(long, requires = "vertex_rule", conflicts_with = "scenario")]
    pub logic: Option<String>,
    /// Term table: `preset:NAME`, `builtin:NAME` or a file.
    #[arg(long, group = "vertex_rule")]
    pub terms: Option<String>,
    /// Use the sign assignments of the logic, one product per context.
    #[arg(long, group = "vertex_rule")]
    pub noncontextual: bool,
    /// A bundled scenario; its expected H-representation is the golden.
    #[arg(long)]
    pub scenario: Option<String>,
    /// Facets to vertices.
    #[arg(long)]
    pub reverse: bool,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuantumArgs {
    /// Operator expression file.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    pub expr: Option<String>,
    /// Bundled expression: chsh, kcbs or cabelloT.
    #[arg(long)]
    pub preset: Option<String>,
    /// Override a parameter, `NAME=VALUE` (`pi/4` style values allowed).
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Maximize the top eigenvalue over the free parameters.
    #[arg(long)]
    pub optimize: bool,
    /// Parameters to optimize, comma separated (default: all).
    #[arg(long, value_delimiter = ',', requires = "optimize")]
    pub free: Vec<String>,
    /// Expectation value in a two-qubit Bell state (psi-minus, psi-plus,
    /// phi-minus, phi-plus).
    #[arg(long)]
    pub state: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Logic to check against the vectors.
    #[arg(long, required_unless_present = "derive", conflicts_with = "derive")]
    pub logic: Option<String>,
    /// `builtin:NAME` or a vector file.
    #[arg(long)]
    pub vectors: String,
    /// Orthogonality tolerance; 0 demands exact coordinates.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Derive the logic from the orthogonality cliques.
    #[arg(long)]
    pub derive: bool,
    /// Expected dimension of the vectors.
    #[arg(long)]
    pub dim: Option<usize>,
}

/// What a run produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub source: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OutputRecord {
    File { path: String, sha256: String },
    Stdout { sha256: String, bytes: usize, json: Option<Value> },
}

/// Provenance of one run. Everything but `wall_time_s` is a function of the
/// command line and the input contents.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub exit_code: i32,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<OutputRecord>,
    pub wall_time_s: f64,
}

impl RunReport {
    /// The report without its timing, for comparing runs.
    pub fn body(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("wall_time_s");
        v
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Input resolution plus the digests the run report needs.
#[derive(Default)]
struct Ctx {
    inputs: Vec<InputDigest>,
    outputs: Vec<OutputRecord>,
    stdout: String,
    stderr: String,
}

type Table = fn(&str) -> Option<&'static str>;

impl Ctx {
    fn record(&mut self, source: &str, text: &str) {
        if !self.inputs.iter().any(|d| d.source == source) {
            self.inputs.push(InputDigest {
                source: source.to_string(),
                sha256: sha256_hex(text.as_bytes()),
                bytes: text.len(),
            });
        }
    }

    fn read_file(&mut self, path: &str) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        self.record(path, &text);
        Ok(text)
    }

    /// `builtin:NAME` (or `preset:NAME`) from `table`, otherwise a file path.
    fn load(&mut self, spec: &str, kind: &'static str, table: Table) -> Result<String, CliError> {
        let name = spec.strip_prefix("builtin:").or_else(|| spec.strip_prefix("preset:"));
        match name {
            Some(n) => {
                let text = table(n).ok_or_else(|| CliError::UnknownBuiltin {
                    kind,
                    name: n.to_string(),
                })?;
                self.record(spec, text);
                Ok(text.to_string())
            }
            None => self.read_file(spec),
        }
    }

    fn logic(&mut self, spec: &str) -> Result<Logic, CliError> {
        Ok(parse_logic(&self.load(spec, "logic", logic_text)?)?)
    }

    fn vectors(&mut self, spec: &str) -> Result<Realization, CliError> {
        Ok(parse_vectors(&self.load(spec, "vector file", vector_text)?)?)
    }

    fn out(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
    }

    fn err(&mut self, s: impl AsRef<str>) {
        self.stderr.push_str(s.as_ref());
    }

    /// Sends a document to `path`, or to stdout.
    fn emit(&mut self, doc: String, path: Option<&Path>) -> Result<(), CliError> {
        match path {
            Some(p) => {
                std::fs::write(p, &doc).map_err(|e| CliError::Io {
                    path: p.display().to_string(),
                    message: e.to_string(),
                })?;
                self.outputs.push(OutputRecord::File {
                    path: p.display().to_string(),
                    sha256: sha256_hex(doc.as_bytes()),
                });
            }
            None => self.out(doc),
        }
        Ok(())
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            // clap would exit with 2, which here means "no states".
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    execute(&cli, command)
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli, command: Vec<String>) -> Outcome {
    let start = Instant::now();
    let mut ctx = Ctx::default();
    let result = match cli.jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli, &mut ctx)),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} workers: {e}"))),
        },
        None => dispatch(cli, &mut ctx),
    };
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            ctx.err(format!("error: {e}\n"));
            EXIT_ERROR
        }
    };
    let mut outcome = Outcome {
        code,
        stdout: std::mem::take(&mut ctx.stdout),
        stderr: std::mem::take(&mut ctx.stderr),
    };
    if let Some(path) = &cli.report {
        if !outcome.stdout.is_empty() {
            ctx.outputs.push(OutputRecord::Stdout {
                sha256: sha256_hex(outcome.stdout.as_bytes()),
                bytes: outcome.stdout.len(),
                json: serde_json::from_str(&outcome.stdout).ok(),
            });
        }
        let report = RunReport {
            command,
            exit_code: code,
            inputs: ctx.inputs,
            outputs: ctx.outputs,
            wall_time_s: start.elapsed().as_secs_f64(),
        };
        let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            outcome.stderr.push_str(&format!("error: cannot write report `{}`: {e}\n", path.display()));
            outcome.code = EXIT_ERROR;
        }
    }
    outcome
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<i32, CliError> {
    if cli.golden.is_some() && !matches!(cli.command, Command::Hull(_)) {
        return Err(CliError::Usage("--golden applies to the hull command only".into()));
    }
    match &cli.command {
        Command::States(a) => cmd_states(a, cli.format.unwrap_or(Format::Table), ctx),
        Command::Hull(a) => cmd_hull(a, cli.format.unwrap_or(Format::Dd), cli.golden.as_deref(), ctx),
        Command::Quantum(a) => cmd_quantum(a, cli.format.unwrap_or(Format::Json), cli.seed, ctx),
        Command::Verify(a) => cmd_verify(a, cli.format.unwrap_or(Format::Table), ctx),
    }
}

fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes") + "\n"
}

/// A 0/1 matrix with atom names as column headings.
fn bit_table(logic: &Logic, rows: &[(String, Vec<String>)]) -> String {
    let widths: Vec<usize> = logic.atoms.iter().map(|a| a.name.len()).collect();
    let lead = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(1);
    let mut s = format!("{:lead$}", "");
    for a in &logic.atoms {
        s.push_str(&format!(" {}", a.name));
    }
    s.push('\n');
    for (label, cells) in rows {
        s.push_str(&format!("{label:>lead$}"));
        for (c, w) in cells.iter().zip(&widths) {
            s.push_str(&format!(" {c:>w$}"));
        }
        s.push('\n');
    }
    s
}

fn cmd_states(a: &StatesArgs, format: Format, ctx: &mut Ctx) -> Result<i32, CliError> {
    let logic = ctx.logic(&a.logic)?;
    for w in logic.warnings() {
        ctx.err(format!("warning: {w}\n"));
    }
    if let Some(k) = a.colors {
        return colorings(&logic, k, a.up_to_color_permutation, format, ctx);
    }
    let states = enumerate_states(&logic);
    let pairs = a.check_separating.then(|| unseparated_pairs(&logic, &states));
    let name = |i: usize| logic.atom_name(i).to_string();
    let certificate = states.is_empty().then(|| parity_certificate(&logic)).flatten();
    match format {
        Format::Table => {
            ctx.out(format!(
                "logic {}: {} atoms, {} contexts\n{} states\n",
                logic.name,
                logic.atom_count(),
                logic.contexts.len(),
                states.len()
            ));
            if !states.is_empty() {
                let rows: Vec<(String, Vec<String>)> = states
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let cells = s.values.iter().map(|&v| if v { "1" } else { "0" }.to_string()).collect();
                        (format!("s{}", i + 1), cells)
                    })
                    .collect();
                ctx.out(bit_table(&logic, &rows));
            }
            if let Some(c) = &certificate {
                ctx.out(format!("{c}\n"));
            }
            if let Some(p) = &pairs {
                ctx.out(format!("unseparated pairs: {}\n", p.len()));
                for &(x, y) in p {
                    ctx.out(format!("  {} {}\n", name(x), name(y)));
                }
            }
        }
        Format::Json => {
            let records: Vec<Value> = states
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let truths: Vec<String> = (0..s.values.len()).filter(|&k| s.values[k]).map(name).collect();
                    json!({"state": i + 1, "bits": s.bits(), "true": truths})
                })
                .collect();
            let mut doc = json!({
                "logic": logic.name,
                "atoms": logic.atoms.iter().map(|a| a.name.clone()).collect::<Vec<_>>(),
                "count": states.len(),
                "states": records,
            });
            if let Some(c) = &certificate {
                doc["parity_certificate"] = json!(c.to_string());
            }
            if let Some(p) = &pairs {
                doc["unseparated"] = json!(p.iter().map(|&(x, y)| [name(x), name(y)]).collect::<Vec<_>>());
            }
            ctx.out(to_json(&doc));
        }
        Format::Dd => {
            if states.is_empty() {
                ctx.err("0 states: nothing to write\n");
            } else {
                let points: Vec<Vec<Rat>> = states
                    .iter()
                    .map(|s| s.values.iter().map(|&v| int(v as i64)).collect())
                    .collect();
                ctx.out(emit_v(&VRep::new(points)?));
            }
            if let Some(c) = &certificate {
                ctx.err(format!("{c}\n"));
            }
        }
    }
    if states.is_empty() {
        if certificate.is_none() {
            ctx.err("no two-valued states (exhaustive search)\n");
        }
        return Ok(EXIT_NO_STATES);
    }
    Ok(EXIT_OK)
}

fn colorings(logic: &Logic, k: usize, canonical: bool, format: Format, ctx: &mut Ctx) -> Result<i32, CliError> {
    let cs = enumerate_colorings(logic, k, canonical)?;
    match format {
        Format::Json => {
            let records: Vec<Value> = cs.iter().map(|c| json!(c.colors)).collect();
            ctx.out(to_json(&json!({
                "logic": logic.name,
                "atoms": logic.atoms.iter().map(|a| a.name.clone()).collect::<Vec<_>>(),
                "colors": k,
                "count": cs.len(),
                "colorings": records,
            })));
        }
        Format::Table | Format::Dd => {
            ctx.out(format!("logic {}: {} colorings with {k} colors\n", logic.name, cs.len()));
            let rows: Vec<(String, Vec<String>)> = cs
                .iter()
                .enumerate()
                .map(|(i, c)| (format!("c{}", i + 1), c.colors.iter().map(|x| x.to_string()).collect()))
                .collect();
            if !rows.is_empty() {
                ctx.out(bit_table(logic, &rows));
            }
        }
    }
    Ok(EXIT_OK)
}

fn rat_row(b: &Rat, a: &[Rat]) -> Vec<String> {
    std::iter::once(b).chain(a).map(fmt_rat).collect()
}

fn h_json(h: &HRep) -> Value {
    json!({
        "representation": "H",
        "dim": h.dim,
        "inequalities": h.inequalities.iter().map(|c| rat_row(&c.b, &c.a)).collect::<Vec<_>>(),
        "linearities": h.linearities.iter().map(|c| rat_row(&c.b, &c.a)).collect::<Vec<_>>(),
    })
}

fn v_json(v: &VRep) -> Value {
    json!({
        "representation": "V",
        "dim": v.dim,
        "vertices": v.points.iter().map(|p| p.iter().map(fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn render_h(h: &HRep, format: Format) -> String {
    match format {
        Format::Json => to_json(&h_json(h)),
        _ => emit_h(h),
    }
}

fn render_v(v: &VRep, format: Format) -> String {
    match format {
        Format::Json => to_json(&v_json(v)),
        _ => emit_v(v),
    }
}

fn point_string(p: &[Rat]) -> String {
    format!("({})", p.iter().map(fmt_rat).collect::<Vec<_>>().join(", "))
}

/// Golden check for vertex output: equality of the distinct point sets.
fn compare_vertices(got: &VRep, want: &VRep) -> (bool, String) {
    let g: BTreeSet<&Vec<Rat>> = got.points.iter().collect();
    let w: BTreeSet<&Vec<Rat>> = want.points.iter().collect();
    let mut s = String::new();
    for p in w.difference(&g) {
        s.push_str(&format!("missing vertex: {}\n", point_string(p)));
    }
    for p in g.difference(&w) {
        s.push_str(&format!("unexpected vertex: {}\n", point_string(p)));
    }
    let ok = g == w;
    s.push_str(if ok { "golden: match\n" } else { "golden: MISMATCH\n" });
    (ok, s)
}

fn cmd_hull(a: &HullArgs, format: Format, golden: Option<&str>, ctx: &mut Ctx) -> Result<i32, CliError> {
    if format == Format::Table {
        return Err(CliError::Usage("hull writes dd or json".into()));
    }
    let golden_text = golden.map(|g| ctx.load(g, "scenario file", scenario_file)).transpose()?;
    if a.reverse {
        let Some(input) = &a.input else {
            return Err(CliError::Usage("--reverse needs --input with an H-representation".into()));
        };
        let h = match parse_dd(&ctx.load(input, "scenario file", scenario_file)?)? {
            DdDocument::H(h) => h,
            DdDocument::V(_) => return Err(CliError::Usage(format!("`{input}` is a V-representation; drop --reverse"))),
        };
        let v = vertices(&h)?;
        ctx.err(format!("{} vertices in dimension {}\n", v.points.len(), v.dim));
        ctx.emit(render_v(&v, format), a.output.as_deref())?;
        if let Some(text) = golden_text {
            let want = match parse_dd(&text)? {
                DdDocument::V(w) => w,
                DdDocument::H(_) => return Err(CliError::Usage("golden for --reverse must be a V-representation".into())),
            };
            let (ok, diff) = compare_vertices(&v, &want);
            ctx.err(diff);
            if !ok {
                return Ok(EXIT_GOLDEN_MISMATCH);
            }
        }
        return Ok(EXIT_OK);
    }

    let mut scenario = None;
    let v = if let Some(input) = &a.input {
        match parse_dd(&ctx.load(input, "scenario file", scenario_file)?)? {
            DdDocument::V(v) => v,
            DdDocument::H(_) => return Err(CliError::Usage(format!("`{input}` is an H-representation; use --reverse"))),
        }
    } else if let Some(l) = &a.logic {
        let logic = ctx.logic(l)?;
        if a.noncontextual {
            gen_noncontextual_vertices(&logic, NONCONTEXTUAL_ATOM_LIMIT)?
        } else {
            let t = a.terms.as_deref().expect("clap requires a vertex rule");
            let table = parse_terms(&ctx.load(t, "term table", terms_text)?, &logic)?;
            match gen_state_vertices(&logic, &table) {
                Err(e @ VertexError::NoStates { .. }) => {
                    ctx.err(format!("{e}\n"));
                    return Ok(EXIT_NO_STATES);
                }
                other => other?,
            }
        }
    } else if let Some(name) = &a.scenario {
        let s = builtin_scenario(name)?;
        if let Some(ext) = &s.ext {
            ctx.load(&format!("builtin:{ext}"), "scenario file", scenario_file)?;
        }
        let v = s.vertices()?;
        scenario = Some(s);
        v
    } else {
        return Err(CliError::Usage("hull needs --input, --logic or --scenario".into()));
    };

    let dedup = v.deduped();
    ctx.err(format!(
        "{} vertices ({} distinct) in dimension {}\n",
        v.points.len(),
        dedup.points.len(),
        v.dim
    ));
    let h = hull(&dedup)?;
    ctx.err(format!(
        "{} inequalities, {} linearities\n",
        h.inequalities.len(),
        h.linearities.len()
    ));
    ctx.emit(render_h(&h, format), a.output.as_deref())?;

    let check = match (golden_text, &scenario) {
        (Some(text), _) => {
            let want = parse_h(&text)?;
            if want.dim != h.dim {
                ctx.err(format!("golden dimension {} differs from {}\n", want.dim, h.dim));
            }
            Some(GoldenCheck::compare(&h, &want))
        }
        (None, Some(s)) => Some(s.check(&h)),
        (None, None) => None,
    };
    if let Some(c) = check {
        ctx.err(format!("{c}\n"));
        if !c.passed() {
            return Ok(EXIT_GOLDEN_MISMATCH);
        }
    }
    Ok(EXIT_OK)
}

fn parse_param(s: &str) -> Result<(String, f64), CliError> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("--param expects NAME=VALUE, got `{s}`")))?;
    let x = quantum::operator::parse_angle_value(v.trim())
        .ok_or_else(|| CliError::Usage(format!("bad value `{v}` for parameter `{k}`")))?;
    Ok((k.trim().to_string(), x))
}

fn cmd_quantum(a: &QuantumArgs, format: Format, seed: u64, ctx: &mut Ctx) -> Result<i32, CliError> {
    let (label, text) = match (&a.expr, &a.preset) {
        (Some(f), _) => (f.clone(), ctx.read_file(f)?),
        (None, Some(p)) => (p.clone(), ctx.load(&format!("preset:{p}"), "operator preset", operator_text)?),
        (None, None) => unreachable!("clap requires --expr or --preset"),
    };
    let expr = parse_operator(&text)?;

    // Vector files referenced by `proj` bindings, loaded once up front.
    let mut realizations: BTreeMap<String, Realization> = BTreeMap::new();
    for b in &expr.bindings {
        if let quantum::operator::BindingKind::Proj { source, .. } = &b.kind {
            if !realizations.contains_key(source) {
                let spec = if vector_text(source).is_some() {
                    format!("builtin:{source}")
                } else {
                    source.clone()
                };
                let r = ctx.vectors(&spec)?;
                realizations.insert(source.clone(), r);
            }
        }
    }
    let lookup = |name: &str| realizations.get(name).cloned();

    let mut overrides: BTreeMap<String, f64> = BTreeMap::new();
    for p in &a.params {
        let (k, v) = parse_param(p)?;
        overrides.insert(k, v);
    }
    let mut optimum = None;
    if a.optimize {
        let free: Vec<&str> = if a.free.is_empty() {
            expr.param_names()
        } else {
            a.free.iter().map(String::as_str).collect()
        };
        // Fixed parameters keep their overrides; the free ones are searched.
        let mut fixed = expr.clone();
        for (name, value) in fixed.params.iter_mut() {
            if let Some(v) = overrides.get(name) {
                *value = *v;
            }
        }
        let options = OptimizeOptions {
            seed,
            ..Default::default()
        };
        let b = maximize_bound(&fixed, &free, &lookup, &options)?;
        for (k, v) in &b.params {
            overrides.insert(k.clone(), *v);
        }
        optimum = Some(b);
    }
    let op = build_with(&expr, &overrides, &lookup)?;
    let ev = eigenvalues(&op)?;
    let mut params = expr.default_params();
    params.extend(overrides);
    let state_value = a
        .state
        .as_deref()
        .map(|s| -> Result<(String, f64), CliError> { Ok((s.to_string(), project_and_bound(&op, &bell_state(s)?)?)) })
        .transpose()?;

    let lambda_min = ev[0];
    let lambda_max = optimum.as_ref().map_or(*ev.last().unwrap(), |b| b.lambda_max);
    match format {
        Format::Json => {
            let mut doc = json!({
                "operator": label,
                "dimension": op.nrows(),
                "eigenvalues": ev,
                "lambda_min": lambda_min,
                "lambda_max": lambda_max,
                "params": params,
            });
            if let Some(b) = &optimum {
                doc["optimize"] = json!({
                    "free": b.params.iter().map(|p| p.0.clone()).collect::<Vec<_>>(),
                    "evaluations": b.evaluations,
                    "grid": b.grid,
                });
            }
            if let Some((s, v)) = &state_value {
                doc["state"] = json!({"name": s, "value": v});
            }
            ctx.out(to_json(&doc));
        }
        Format::Table => {
            ctx.out(format!("operator {label}: dimension {}\n", op.nrows()));
            for (k, v) in &params {
                ctx.out(format!("param {k} = {v}\n"));
            }
            ctx.out("eigenvalues:\n");
            for e in &ev {
                ctx.out(format!("  {e:.12}\n"));
            }
            ctx.out(format!("lambda_min = {lambda_min:.12}\nlambda_max = {lambda_max:.12}\n"));
            if let Some((s, v)) = &state_value {
                ctx.out(format!("<{s}|T|{s}> = {v:.12}\n"));
            }
        }
        Format::Dd => return Err(CliError::Usage("quantum writes json or table".into())),
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, format: Format, ctx: &mut Ctx) -> Result<i32, CliError> {
    if format == Format::Dd {
        return Err(CliError::Usage("verify writes table or json".into()));
    }
    let real = ctx.vectors(&a.vectors)?;
    if let Some(d) = a.dim {
        if d != real.dim {
            return Err(CliError::Dimension {
                expected: d,
                found: real.dim,
            });
        }
    }
    if a.derive {
        let name = a.vectors.strip_prefix("builtin:").unwrap_or("derived");
        let logic = derive_logic(name, &real, a.tol)?;
        let contexts: Vec<Vec<String>> = logic
            .contexts
            .iter()
            .map(|c| c.atoms.iter().map(|&i| logic.atom_name(i).to_string()).collect())
            .collect();
        match format {
            Format::Json => ctx.out(to_json(&json!({
                "logic": logic.name,
                "dim": real.dim,
                "atoms": logic.atoms.iter().map(|a| a.name.clone()).collect::<Vec<_>>(),
                "contexts": contexts,
            }))),
            _ => {
                ctx.out(format!(
                    "# {} contexts over {} atoms in dimension {}\n",
                    contexts.len(),
                    logic.atom_count(),
                    real.dim
                ));
                ctx.out(logic.to_text());
            }
        }
        return Ok(EXIT_OK);
    }
    let logic = ctx.logic(a.logic.as_deref().expect("clap requires --logic"))?;
    let report = verify_realization(&logic, &real, a.tol)?;
    match format {
        Format::Json => ctx.out(to_json(&json!({
            "passed": report.passed(),
            "exact": report.exact,
            "non_orthogonal": report.non_orthogonal,
            "size_warnings": report.size_warnings.iter().map(|(c, n)| json!({"context": c + 1, "atoms": n})).collect::<Vec<_>>(),
            "collinear": report.collinear,
        }))),
        _ => ctx.out(format!("{report}\n")),
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
