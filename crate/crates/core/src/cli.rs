//! Command-line front end: instance files, check suites and the small
//! construction commands.
//!
//! Exit codes: 0 when every check holds, 1 when a check fails or a
//! construction's precondition is violated, 2 when the input cannot be
//! parsed or does not validate.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::axioms::{
    check_beck_pullback, check_discrete, check_hom_discreteness, check_maps_comonadic,
};
use crate::comonad::{
    check_em_universal, comultiplication_by_pasting, copoint_criterion_holds, em_object,
    find_copoint, g_of_r, g_of_r_counit, paired_legs_comonad, tabulate, tabulation_via_em_agrees,
    Comonad,
};
use crate::direct_sum::{
    canonical_sum_to_product, codiagonal_is_map, matrices_isomorphic, matrix_compose,
    matrix_of_span, span_of_matrix, zero_object_check, MatrixData, SpanMatrix,
};
use crate::enumerate::equal_leg_endospans;
use crate::equiv::{
    check_identity_preserved, check_local_equivalence, check_pseudofunctoriality,
    check_roundtrips, functor_f,
};
use crate::error::Error;
use crate::finset::{FiniteFunction, FiniteSet};
use crate::maps::is_map;
use crate::report::{AxiomReport, CellData, Counterexample, SpanData, Witness};
use crate::span::{compose_spans, find_iso, Span, SpanMorphism};

pub const DEFAULT_BOUND: usize = 4;
pub const MAX_BOUND: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "spanbicat", about = "Check the structure of spans of finite sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    Comonads,
    Tabulation,
    Biequivalence,
    DirectSums,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a suite of checks over an instance file and a sweep of small objects.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compose named spans from left to right.
    Compose {
        file: PathBuf,
        #[arg(required = true)]
        spans: Vec<String>,
        /// Also look for an isomorphism between the composite and this span.
        #[arg(long)]
        iso_with: Option<String>,
    },
    /// Tabulate a named span.
    Tabulate { file: PathBuf, span: String },
    /// Build the Eilenberg-Moore object of a named comonad or endospan.
    Em { file: PathBuf, name: String },
    /// Show a named matrix, optionally composed with another.
    Matrix {
        file: PathBuf,
        name: String,
        #[arg(long)]
        compose: Option<String>,
    },
    /// Re-validate a report written by `check`.
    ValidateReport { file: PathBuf },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetDecl {
    size: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionDecl {
    dom: String,
    cod: String,
    table: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpanDecl {
    apex: String,
    left: String,
    right: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComonadDecl {
    span: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDecl {
    source: String,
    target: String,
    map: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDecl {
    span: String,
    rows: Vec<String>,
    cols: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    #[serde(default)]
    sets: BTreeMap<String, SetDecl>,
    #[serde(default)]
    functions: BTreeMap<String, FunctionDecl>,
    #[serde(default)]
    spans: BTreeMap<String, SpanDecl>,
    #[serde(default)]
    comonads: BTreeMap<String, ComonadDecl>,
    #[serde(default)]
    cells: BTreeMap<String, CellDecl>,
    #[serde(default)]
    matrices: BTreeMap<String, MatrixDecl>,
}

/// A 2-cell as declared: its table is in range but it need not commute
/// with the legs; the checks decide that.
#[derive(Debug, Clone)]
pub struct DeclaredCell {
    pub source: (String, Span),
    pub target: (String, Span),
    pub map: FiniteFunction,
}

/// A validated instance file: every reference resolves and every function
/// is well typed.
#[derive(Debug, Default)]
pub struct Instance {
    pub sets: BTreeMap<String, FiniteSet>,
    pub functions: BTreeMap<String, FiniteFunction>,
    pub spans: BTreeMap<String, Span>,
    pub comonads: BTreeMap<String, Span>,
    pub cells: BTreeMap<String, DeclaredCell>,
    pub matrices: BTreeMap<String, SpanMatrix>,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(String),
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str, user: &str) -> Result<&'a T, LoadError> {
    map.get(name)
        .ok_or_else(|| LoadError::Invalid(format!("{user} refers to unknown {kind} '{name}'")))
}

fn invalid(context: &str, e: Error) -> LoadError {
    LoadError::Invalid(format!("{context}: {e}"))
}

pub fn parse_instance(text: &str) -> Result<Instance, LoadError> {
    let file: InstanceFile = if text.trim().is_empty() {
        InstanceFile::default()
    } else {
        serde_json::from_str(text)?
    };
    let mut inst = Instance::default();
    for (name, d) in &file.sets {
        let set = match &d.labels {
            Some(labels) => {
                if labels.len() != d.size {
                    return Err(LoadError::Invalid(format!("set '{name}' has {} labels for size {}", labels.len(), d.size)));
                }
                FiniteSet::with_labels(labels.clone()).map_err(|e| invalid(&format!("set '{name}'"), e))?
            }
            None => FiniteSet::new(d.size),
        };
        inst.sets.insert(name.clone(), set);
    }
    for (name, d) in &file.functions {
        let user = format!("function '{name}'");
        let dom = lookup(&inst.sets, "set", &d.dom, &user)?.clone();
        let cod = lookup(&inst.sets, "set", &d.cod, &user)?.clone();
        let f = FiniteFunction::new(dom, cod, d.table.clone()).map_err(|e| invalid(&user, e))?;
        inst.functions.insert(name.clone(), f);
    }
    for (name, d) in &file.spans {
        let user = format!("span '{name}'");
        let apex = lookup(&inst.sets, "set", &d.apex, &user)?;
        let left = lookup(&inst.functions, "function", &d.left, &user)?;
        let right = lookup(&inst.functions, "function", &d.right, &user)?;
        if left.dom() != apex || right.dom() != apex {
            return Err(LoadError::Invalid(format!("{user}: legs must start at the apex '{}'", d.apex)));
        }
        let s = Span::new(left.clone(), right.clone()).map_err(|e| invalid(&user, e))?;
        inst.spans.insert(name.clone(), s);
    }
    for (name, d) in &file.comonads {
        let user = format!("comonad '{name}'");
        let s = lookup(&inst.spans, "span", &d.span, &user)?;
        if !s.is_endo() {
            return Err(LoadError::Invalid(format!("{user}: carrier must be an endospan")));
        }
        inst.comonads.insert(name.clone(), s.clone());
    }
    for (name, d) in &file.cells {
        let user = format!("cell '{name}'");
        let source = lookup(&inst.spans, "span", &d.source, &user)?.clone();
        let target = lookup(&inst.spans, "span", &d.target, &user)?.clone();
        if source.src() != target.src() || source.tgt() != target.tgt() {
            return Err(LoadError::Invalid(format!("{user}: source and target are not parallel")));
        }
        let map = FiniteFunction::new(source.apex().clone(), target.apex().clone(), d.map.clone())
            .map_err(|e| invalid(&user, e))?;
        inst.cells.insert(
            name.clone(),
            DeclaredCell {
                source: (d.source.clone(), source),
                target: (d.target.clone(), target),
                map,
            },
        );
    }
    for (name, d) in &file.matrices {
        let user = format!("matrix '{name}'");
        let span = lookup(&inst.spans, "span", &d.span, &user)?;
        let blocks = |names: &[String]| {
            names
                .iter()
                .map(|n| lookup(&inst.sets, "set", n, &user).cloned())
                .collect::<Result<Vec<_>, _>>()
        };
        let (rows, cols) = (blocks(&d.rows)?, blocks(&d.cols)?);
        let m = matrix_of_span(span, &rows, &cols).map_err(|e| invalid(&user, e))?;
        inst.matrices.insert(name.clone(), m);
    }
    Ok(inst)
}

pub fn load_instance(path: &Path) -> Result<Instance, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance(&text)
}

/// One line of a suite report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub instance: String,
    pub size: usize,
    #[serde(flatten)]
    pub report: AxiomReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub bound: usize,
    pub objects_checked: usize,
    pub holds: bool,
    pub results: Vec<SuiteResult>,
}

impl SuiteReport {
    pub fn validate(&self) -> Result<(), Error> {
        for r in &self.results {
            r.report.validate()?;
        }
        if self.holds != self.results.iter().all(|r| r.report.holds) {
            return Err(Error::Precondition("overall verdict disagrees with the results".into()));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = if r.report.holds { "PASS" } else { "FAIL" };
            let bounded = if r.report.bounded { " (bounded check)" } else { "" };
            out.push_str(&format!("{status} [{} #{}] {}{bounded}\n", r.instance, r.size, r.report.subject));
            if let Some(ce) = &r.report.counterexample {
                out.push_str(&format!("    counterexample {}: {}\n", ce.kind, ce.detail));
            }
        }
        let failed = self.results.iter().filter(|r| !r.report.holds).count();
        out.push_str(&format!(
            "suite {}: {} checks, {} failed, {} objects checked\n",
            self.suite,
            self.results.len(),
            failed,
            self.objects_checked
        ));
        out
    }
}

struct Collector {
    results: Vec<SuiteResult>,
    objects: usize,
}

impl Collector {
    fn push(&mut self, instance: &str, size: usize, report: AxiomReport) {
        self.results.push(SuiteResult {
            instance: instance.to_string(),
            size,
            report,
        });
    }

    fn push_result(&mut self, instance: &str, size: usize, subject: &str, r: crate::Result<AxiomReport>) {
        let report = r.unwrap_or_else(|e| {
            AxiomReport::fail(subject, Counterexample::new("precondition", e.to_string()))
        });
        self.push(instance, size, report);
    }
}

fn declared_cell_report(cell: &DeclaredCell) -> AxiomReport {
    let subject = format!("{} ⇒ {} is a 2-cell", cell.source.0, cell.target.0);
    match SpanMorphism::new(cell.source.1.clone(), cell.target.1.clone(), cell.map.clone()) {
        Ok(m) => AxiomReport::pass(subject, Witness::cell(&m)),
        Err(e) => AxiomReport::fail(
            subject,
            Counterexample::new("not-a-cell", e.to_string())
                .with_spans([&cell.source.1, &cell.target.1]),
        ),
    }
}

fn small(bound: usize, cap: usize) -> usize {
    bound.min(cap)
}

fn suite_axioms(inst: &Instance, bound: usize, c: &mut Collector) {
    for n in 0..=bound {
        c.objects += 1;
        c.push("sweep", n, check_discrete(&FiniteSet::new(n)));
    }
    for x in 0..=small(bound, 3) {
        for a in 0..=small(bound, 3) {
            c.push("sweep", x * 10 + a, check_hom_discreteness(&FiniteSet::new(x), &FiniteSet::new(a)));
        }
    }
    for (name, s) in &inst.spans {
        if is_map(s) {
            c.push_result(name, s.apex().size(), "map is comonadic", check_maps_comonadic(s, small(bound, 2)));
        }
    }
    let maps: Vec<(&String, &Span)> = inst.spans.iter().filter(|(_, s)| is_map(s)).collect();
    for (na, a) in &maps {
        for (nb, b) in &maps {
            if a.tgt() == b.tgt() {
                c.push_result(&format!("{na},{nb}"), a.tgt().size(), "Beck condition", check_beck_pullback(a, b));
            }
        }
    }
    for (name, cell) in &inst.cells {
        c.push(name, cell.map.dom().size(), declared_cell_report(cell));
    }
}

fn comonad_report(name: &str, g: &Span, bound: usize, c: &mut Collector) {
    let size = g.apex().size();
    let comonad = match Comonad::new(g) {
        Ok(k) => k,
        Err(e) => {
            c.push(
                name,
                size,
                AxiomReport::fail("endospan carries a comonad", Counterexample::new("no-copoint", e.to_string()).with_spans([g])),
            );
            return;
        }
    };
    let pasted = comultiplication_by_pasting(g).map(|d| {
        if &d == comonad.comult() {
            AxiomReport::pass("pasted comultiplication equals the direct one", Witness::cell(&d))
        } else {
            AxiomReport::fail(
                "pasted comultiplication equals the direct one",
                Counterexample::new("mismatch", "tables differ").with_cell((&d).into()),
            )
        }
    });
    c.push_result(name, size, "pasted comultiplication", pasted);
    let em = em_object(&comonad).and_then(|em| check_em_universal(&comonad, &em, small(bound, 2)));
    c.push_result(name, size, "Eilenberg-Moore object", em);
}

fn suite_comonads(inst: &Instance, bound: usize, c: &mut Collector) {
    let b = small(bound, 3);
    for n in 0..=b {
        c.objects += 1;
        let spans = crate::enumerate::spans_up_to_iso(n, n, b);
        let bad = spans.iter().find(|g| !copoint_criterion_holds(g).unwrap_or(false));
        let subject = format!("comonad structures on endospans of an object of size {n}");
        c.push(
            "sweep",
            n,
            match bad {
                None => AxiomReport::pass(subject, Witness::Exhaustive { checked: spans.len() }).bounded(),
                Some(g) => AxiomReport::fail(subject, Counterexample::new("copoint-criterion", "fails").with_spans([g])).bounded(),
            },
        );
        for g in equal_leg_endospans(n, small(bound, 2)) {
            let ok = Comonad::new(&g)
                .and_then(|k| Ok(&comultiplication_by_pasting(&g)? == k.comult()))
                .unwrap_or(false);
            if !ok {
                c.push("sweep", n, AxiomReport::fail("pasted comultiplication", Counterexample::new("mismatch", "tables differ").with_spans([&g])));
            }
        }
    }
    for (name, g) in &inst.comonads {
        comonad_report(name, g, bound, c);
    }
}

fn tabulation_report(r: &Span) -> crate::Result<AxiomReport> {
    let subject = "tabulation and the comonad of a span";
    let tab = tabulate(r)?;
    let mate = tab.mate(r)?;
    let (_, counit_mate) = g_of_r_counit(r)?;
    let paired = find_iso(g_of_r(r)?.carrier(), &paired_legs_comonad(r)?).is_some();
    let via_em = tabulation_via_em_agrees(r)?;
    if mate.is_invertible() && counit_mate.is_invertible() && paired && via_em {
        Ok(AxiomReport::pass(subject, Witness::iso(&mate)))
    } else {
        Ok(AxiomReport::fail(
            subject,
            Counterexample::new(
                "tabulation",
                format!(
                    "mate invertible {}, counit transpose invertible {}, paired-legs iso {}, agrees with Eilenberg-Moore {}",
                    mate.is_invertible(),
                    counit_mate.is_invertible(),
                    paired,
                    via_em
                ),
            )
            .with_spans([r]),
        ))
    }
}

fn suite_tabulation(inst: &Instance, bound: usize, c: &mut Collector) {
    let b = small(bound, 3);
    for n in 0..=small(bound, 2) {
        c.objects += 1;
        let spans = crate::enumerate::spans_up_to_iso(n, 2, b);
        let bad = spans.iter().find(|r| !tabulation_report(r).map(|x| x.holds).unwrap_or(false));
        let subject = format!("tabulations of spans {n} → 2 with apex up to {b}");
        c.push(
            "sweep",
            n,
            match bad {
                None => AxiomReport::pass(subject, Witness::Exhaustive { checked: spans.len() }).bounded(),
                Some(r) => AxiomReport::fail(subject, Counterexample::new("tabulation", "fails").with_spans([r])).bounded(),
            },
        );
    }
    for (name, r) in &inst.spans {
        c.push_result(name, r.apex().size(), "tabulation", tabulation_report(r));
    }
}

fn suite_biequivalence(inst: &Instance, bound: usize, c: &mut Collector) {
    for n in 0..=bound {
        c.objects += 1;
        c.push("sweep", n, check_identity_preserved(&FiniteSet::new(n)));
    }
    let b = small(bound, 3);
    for x in 0..=2 {
        for a in 0..=2 {
            c.push_result("sweep", x * 10 + a, "local equivalence", check_local_equivalence(x, a, b));
        }
    }
    for (name, r) in &inst.spans {
        let report = functor_f(r).and_then(|ms| check_roundtrips(r, &ms));
        c.push_result(name, r.apex().size(), "round trips", report);
    }
    for (n1, r1) in &inst.spans {
        for (n2, r2) in &inst.spans {
            if r1.tgt() == r2.src() {
                let report = functor_f(r1)
                    .and_then(|m1| Ok((m1, functor_f(r2)?)))
                    .and_then(|(m1, m2)| check_pseudofunctoriality(&m1, &m2));
                c.push_result(&format!("{n1},{n2}"), r1.apex().size() * r2.apex().size(), "composition preserved", report);
            }
        }
    }
}

fn suite_direct_sums(inst: &Instance, bound: usize, c: &mut Collector) {
    c.push("sweep", 0, zero_object_check(bound, small(bound, 2)));
    for n in 0..=bound {
        c.objects += 1;
        c.push("sweep", n, codiagonal_is_map(&FiniteSet::new(n)));
    }
    let b = small(bound, 3);
    for x in 0..=b {
        for y in 0..=b {
            c.push("sweep", x * 10 + y, canonical_sum_to_product(&FiniteSet::new(x), &FiniteSet::new(y)));
        }
    }
    for (name, m) in &inst.matrices {
        let subject = "matrix reassembles to its span";
        let span = span_of_matrix(m);
        let report = match matrix_of_span(&span, m.rows(), m.cols()) {
            Ok(back) if matrices_isomorphic(&back, m) => {
                AxiomReport::pass(subject, Witness::Exhaustive { checked: m.rows().len() * m.cols().len() })
            }
            _ => AxiomReport::fail(subject, Counterexample::new("round-trip", "blocks differ").with_spans([&span])),
        };
        c.push(name, span.apex().size(), report);
    }
    for (n1, m1) in &inst.matrices {
        for (n2, m2) in &inst.matrices {
            if m1.cols() == m2.rows() {
                c.push_result(&format!("{n1},{n2}"), 0, "matrix composition", matrix_agreement(m1, m2));
            }
        }
    }
}

fn matrix_agreement(m1: &SpanMatrix, m2: &SpanMatrix) -> crate::Result<AxiomReport> {
    let subject = "matrix product agrees with composition";
    let product = matrix_compose(m1, m2)?;
    let direct = matrix_of_span(
        &compose_spans(&span_of_matrix(m1), &span_of_matrix(m2))?,
        m1.rows(),
        m2.cols(),
    )?;
    Ok(if matrices_isomorphic(&product, &direct) {
        AxiomReport::pass(subject, Witness::Exhaustive { checked: m1.rows().len() * m2.cols().len() })
    } else {
        AxiomReport::fail(subject, Counterexample::new("mismatch", "blockwise composites differ"))
    })
}

pub fn run_suite(inst: &Instance, suite: Suite, bound: usize) -> SuiteReport {
    let mut c = Collector {
        results: Vec::new(),
        objects: 0,
    };
    let suites: &[Suite] = match suite {
        Suite::All => &[
            Suite::Axioms,
            Suite::Comonads,
            Suite::Tabulation,
            Suite::Biequivalence,
            Suite::DirectSums,
        ],
        _ => std::slice::from_ref(&suite),
    };
    for s in suites {
        match s {
            Suite::Axioms => suite_axioms(inst, bound, &mut c),
            Suite::Comonads => suite_comonads(inst, bound, &mut c),
            Suite::Tabulation => suite_tabulation(inst, bound, &mut c),
            Suite::Biequivalence => suite_biequivalence(inst, bound, &mut c),
            Suite::DirectSums => suite_direct_sums(inst, bound, &mut c),
            Suite::All => unreachable!("expanded above"),
        }
    }
    let mut results = c.results;
    results.sort_by(|a, b| {
        (a.instance.as_str(), a.size, a.report.subject.as_str())
            .cmp(&(b.instance.as_str(), b.size, b.report.subject.as_str()))
    });
    let suite_name = serde_json::to_value(suite)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    SuiteReport {
        suite: suite_name,
        bound,
        objects_checked: c.objects,
        holds: results.iter().all(|r| r.report.holds),
        results,
    }
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    let _ = writeln!(out, "{text}");
}

#[derive(Serialize)]
struct ComposeOutput {
    composite: SpanData,
    apex: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    iso: Option<Option<CellData>>,
}

#[derive(Serialize)]
struct TabulateOutput {
    apex_object: usize,
    u: SpanData,
    v: SpanData,
    omega: CellData,
    mate: CellData,
    mate_invertible: bool,
}

#[derive(Serialize)]
struct EmOutput {
    object: usize,
    projection: SpanData,
    coalgebra: CellData,
    mate: CellData,
    mate_invertible: bool,
}

#[derive(Serialize)]
struct MatrixOutput {
    matrix: MatrixData,
    #[serde(skip_serializing_if = "Option::is_none")]
    product: Option<MatrixData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agrees_with_composite: Option<bool>,
}

fn fail(err: &mut dyn Write, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    1
}

fn with_instance(
    path: &Path,
    err: &mut dyn Write,
    body: impl FnOnce(Instance, &mut dyn Write) -> i32,
) -> i32 {
    match load_instance(path) {
        Ok(inst) => body(inst, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Runs a command, writing to `out` and `err`, and returns the exit code.
pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cmd {
        Command::Check {
            file,
            suite,
            bound,
            format,
        } => with_instance(file, err, |inst, err| {
            let bound = if *bound > MAX_BOUND {
                let _ = writeln!(err, "warning: bound {bound} capped at {MAX_BOUND}");
                MAX_BOUND
            } else {
                *bound
            };
            let report = run_suite(&inst, *suite, bound);
            match format {
                Format::Json => print_json(out, &report),
                Format::Text => {
                    let _ = write!(out, "{}", report.to_text());
                }
            }
            if report.holds {
                0
            } else {
                1
            }
        }),
        Command::Compose {
            file,
            spans,
            iso_with,
        } => with_instance(file, err, |inst, err| {
            let mut composite: Option<Span> = None;
            for name in spans {
                let Some(s) = inst.spans.get(name) else {
                    let _ = writeln!(err, "error: unknown span '{name}'");
                    return 2;
                };
                composite = Some(match composite {
                    None => s.clone(),
                    Some(acc) => match compose_spans(&acc, s) {
                        Ok(c) => c,
                        Err(e) => return fail(err, e),
                    },
                });
            }
            let composite = composite.expect("at least one span");
            let iso = match iso_with {
                None => None,
                Some(name) => {
                    let Some(other) = inst.spans.get(name) else {
                        let _ = writeln!(err, "error: unknown span '{name}'");
                        return 2;
                    };
                    Some(find_iso(&composite, other).map(|i| CellData::from(&*i)))
                }
            };
            print_json(
                out,
                &ComposeOutput {
                    apex: composite.apex().size(),
                    composite: (&composite).into(),
                    iso,
                },
            );
            0
        }),
        Command::Tabulate { file, span } => with_instance(file, err, |inst, err| {
            let Some(r) = inst.spans.get(span) else {
                let _ = writeln!(err, "error: unknown span '{span}'");
                return 2;
            };
            let result = tabulate(r).and_then(|t| Ok((t.mate(r)?, t)));
            match result {
                Ok((mate, t)) => {
                    print_json(
                        out,
                        &TabulateOutput {
                            apex_object: t.apex_object().size(),
                            u: t.u().into(),
                            v: t.v().into(),
                            omega: t.omega().into(),
                            mate_invertible: mate.is_invertible(),
                            mate: (&mate).into(),
                        },
                    );
                    0
                }
                Err(e) => fail(err, e),
            }
        }),
        Command::Em { file, name } => with_instance(file, err, |inst, err| {
            let Some(g) = inst.comonads.get(name).or_else(|| inst.spans.get(name)) else {
                let _ = writeln!(err, "error: unknown comonad or span '{name}'");
                return 2;
            };
            if find_copoint(g).is_none() {
                return fail(err, "no copoint: the legs of the endospan differ");
            }
            let result = Comonad::new(g).and_then(|c| {
                let em = em_object(&c)?;
                let mate = em.mate(&c)?;
                Ok((em, mate))
            });
            match result {
                Ok((em, mate)) => {
                    print_json(
                        out,
                        &EmOutput {
                            object: em.object().size(),
                            projection: em.projection().into(),
                            coalgebra: em.coalgebra().into(),
                            mate_invertible: mate.is_invertible(),
                            mate: (&mate).into(),
                        },
                    );
                    0
                }
                Err(e) => fail(err, e),
            }
        }),
        Command::Matrix {
            file,
            name,
            compose,
        } => with_instance(file, err, |inst, err| {
            let Some(m) = inst.matrices.get(name) else {
                let _ = writeln!(err, "error: unknown matrix '{name}'");
                return 2;
            };
            let (product, agrees) = match compose {
                None => (None, None),
                Some(other) => {
                    let Some(n) = inst.matrices.get(other) else {
                        let _ = writeln!(err, "error: unknown matrix '{other}'");
                        return 2;
                    };
                    let p = match matrix_compose(m, n) {
                        Ok(p) => p,
                        Err(e) => return fail(err, e),
                    };
                    let agrees = matrix_agreement(m, n).map(|r| r.holds).unwrap_or(false);
                    (Some((&p).into()), Some(agrees))
                }
            };
            print_json(
                out,
                &MatrixOutput {
                    matrix: m.into(),
                    product,
                    agrees_with_composite: agrees,
                },
            );
            if agrees == Some(false) {
                1
            } else {
                0
            }
        }),
        Command::ValidateReport { file } => {
            let text = match std::fs::read_to_string(file) {
                Ok(t) => t,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot read {}: {e}", file.display());
                    return 2;
                }
            };
            let report: SuiteReport = match serde_json::from_str(&text) {
                Ok(r) => r,
                Err(e) => {
                    let _ = writeln!(err, "error: parse error: {e}");
                    return 2;
                }
            };
            match report.validate() {
                Ok(()) => {
                    let _ = writeln!(out, "report valid: {} results", report.results.len());
                    0
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_instance_parses() {
        let inst = parse_instance("").unwrap();
        assert!(inst.spans.is_empty());
        let inst = parse_instance("{}").unwrap();
        assert!(inst.sets.is_empty());
    }

    #[test]
    fn empty_axioms_sweep_counts_objects() {
        let report = run_suite(&Instance::default(), Suite::Axioms, 3);
        assert!(report.holds);
        assert_eq!(report.objects_checked, 4);
        assert!(report.to_text().contains("4 objects checked"));
    }

    #[test]
    fn unresolved_references_are_rejected() {
        let text = r#"{"functions": {"f": {"dom": "X", "cod": "X", "table": []}}}"#;
        assert!(matches!(parse_instance(text), Err(LoadError::Invalid(_))));
        let text = r#"{"sets": {"X": {"size": 2}}, "functions": {"f": {"dom": "X", "cod": "X", "table": [0, 2]}}}"#;
        assert!(matches!(parse_instance(text), Err(LoadError::Invalid(_))));
        assert!(matches!(parse_instance("{"), Err(LoadError::Parse(_))));
    }

    #[test]
    fn reports_round_trip() {
        let report = run_suite(&Instance::default(), Suite::DirectSums, 2);
        let text = serde_json::to_string(&report).unwrap();
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        back.validate().unwrap();
    }
}
