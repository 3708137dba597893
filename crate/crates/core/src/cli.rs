//! Command-line front end.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::automorphisms::{
    describe_g, graph_automorphism_count, graph_automorphisms, project_automorphism, quotient_automorphisms,
    splitting_r, transpositions_generate, AutDescriptionDoc, DEFAULT_BOUND,
};
use crate::descent::{
    classify_rational_data, compute_fixed_form, enumerate_real_forms, is_indecomposable, rational_form_count,
    real_form_count, DatumDoc, DescentDatum, FormCount, FormDoc, FormMode,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphDoc, QuotientDoc};
use crate::lie::algebra::{AlgebraDoc, DEFAULT_BUDGET};
use crate::lie::{build_algebra_with_budget, GradedAlgebra};

#[derive(Debug, Parser)]
#[command(name = "liegraph", version, about = "Nilpotent Lie algebras of graphs and their rational and real forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Edge-list graph file.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Nilpotency class.
    #[arg(long, short, default_value_t = 2)]
    pub class: usize,
    #[arg(long, short, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest vertex or component count searched for automorphisms.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    pub bound: usize,
    /// Largest free Lie algebra degree dimension that will be built.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Components, quotient graph, automorphism data and form counts.
    Analyze(Common),
    /// Basis and structure constants of the graph Lie algebra.
    Algebra(Common),
    /// One real form per involution class of the quotient automorphisms.
    Realforms(Common),
    /// The rational form of a descent datum.
    Form {
        #[command(flatten)]
        common: Common,
        /// Comma-separated squarefree radicands.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        d: Vec<i64>,
        /// Image of each radicand's sign flip, cycle notation on quotient components.
        #[arg(long)]
        image: Vec<String>,
        /// Orbit-sum basis with X/Y/Z names (one radicand only).
        #[arg(long)]
        paper_basis: bool,
    },
    /// Group descent data into isomorphism classes of rational forms.
    Classify {
        #[command(flatten)]
        common: Common,
        /// JSON list of {"field": [...], "images": [...]}.
        #[arg(long)]
        spec: PathBuf,
    },
    /// Run the invariant checks, optionally against a saved algebra document.
    Check {
        #[command(flatten)]
        common: Common,
        /// Algebra JSON document to audit instead of a freshly built one.
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

/// Rendered output and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, code: 0 }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidDocument(format!("{}: {e}", path.display())))
}

fn load_graph(common: &Common) -> Result<Graph> {
    let path = common.input.as_ref().ok_or_else(|| Error::InvalidDocument("--input is required".into()))?;
    Graph::parse(&read(path)?)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn no_dot(format: Format) -> Result<()> {
    if format == Format::Dot {
        Err(Error::InvalidDocument("dot output is only available for analyze".into()))
    } else {
        Ok(())
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze(c) => analyze(c),
        Command::Algebra(c) => algebra(c),
        Command::Realforms(c) => realforms(c),
        Command::Form { common, d, image, paper_basis } => form(common, d, image, *paper_basis),
        Command::Classify { common, spec } => classify(common, spec),
        Command::Check { common, table } => check(common, table.as_deref()),
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    graph: GraphDoc,
    coherent_components: Vec<Vec<String>>,
    quotient: QuotientDoc,
    connected_components: Vec<Vec<String>>,
    aut_order: String,
    quotient_aut_order: usize,
    description: AutDescriptionDoc,
    transpositions_generate: bool,
    rational_forms: FormCount,
    real_forms: usize,
    abelian: bool,
}

fn labels(g: &Graph, sets: &[Vec<usize>]) -> Vec<Vec<String>> {
    sets.iter().map(|s| s.iter().map(|&v| g.label(v).to_string()).collect()).collect()
}

fn braces(sets: &[Vec<String>]) -> String {
    sets.iter().map(|s| format!("{{{}}}", s.join(","))).collect::<Vec<_>>().join(" ")
}

fn analyze(c: &Common) -> Result<Outcome> {
    let g = load_graph(c)?;
    let q = g.quotient_graph();
    if c.format == Format::Dot {
        return Ok(Outcome::ok(format!("{}{}", g.to_dot("G"), q.to_dot("Q"))));
    }
    let description = describe_g(&g, c.bound)?;
    let report = AnalyzeReport {
        graph: g.to_doc(),
        coherent_components: labels(&g, &g.coherent_components()),
        quotient: q.to_doc(),
        connected_components: labels(&g, &g.connected_components()),
        aut_order: graph_automorphism_count(&g, c.bound)?.to_string(),
        quotient_aut_order: description.component_group.order(),
        description: description.to_doc(&g),
        transpositions_generate: transpositions_generate(&g, c.bound)?,
        rational_forms: rational_form_count(&g, c.bound)?,
        real_forms: real_form_count(&g, c.bound)?,
        abelian: g.edge_count() == 0,
    };
    if c.format == Format::Json {
        return Ok(Outcome::ok(json(&report)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}  edges: {}", g.vertex_count(), g.edge_count());
    if report.abelian {
        let _ = writeln!(out, "note: the graph has no edges, so the Lie algebra is abelian");
    }
    let _ = writeln!(out, "coherent components: {}", braces(&report.coherent_components));
    let _ = writeln!(out, "quotient graph:");
    for (i, comp) in report.quotient.components.iter().enumerate() {
        let looped = if report.quotient.loops.contains(&(i + 1)) { "  loop" } else { "" };
        let _ = writeln!(out, "  {} {{{}}}  weight {}{looped}", i + 1, comp.join(","), report.quotient.weights[i]);
    }
    let edges: Vec<String> = report.quotient.edges.iter().map(|[a, b]| format!("{a}-{b}")).collect();
    let _ = writeln!(out, "  edges: {}", if edges.is_empty() { "none".into() } else { edges.join(" ") });
    let _ = writeln!(out, "connected components: {}", braces(&report.connected_components));
    let _ = writeln!(out, "|Aut(graph)|: {}", report.aut_order);
    let _ = writeln!(out, "|Aut(quotient)|: {}", report.quotient_aut_order);
    let pairs: Vec<String> =
        report.description.m_generator_pairs.iter().map(|[a, b]| format!("({a},{b})")).collect();
    let _ = writeln!(out, "unipotent generators: {}", if pairs.is_empty() { "none".into() } else { pairs.join(" ") });
    let blocks: Vec<String> = report.description.gl_block_sizes.iter().map(usize::to_string).collect();
    let _ = writeln!(out, "GL block sizes: {}", blocks.join(" "));
    let _ = writeln!(out, "reductive dimension: {}", report.description.dim_reductive_part);
    let _ = writeln!(
        out,
        "automorphisms generated by transpositions: {}",
        if report.transpositions_generate { "yes" } else { "no" }
    );
    let _ = writeln!(
        out,
        "rational forms: {}",
        match report.rational_forms {
            FormCount::One => "one",
            FormCount::Infinite => "infinitely many",
        }
    );
    let _ = writeln!(out, "real forms: {}", report.real_forms);
    Ok(Outcome::ok(out))
}

fn build(c: &Common, g: &Graph) -> Result<GradedAlgebra> {
    build_algebra_with_budget(g, c.class, c.budget)
}

fn algebra(c: &Common) -> Result<Outcome> {
    no_dot(c.format)?;
    let g = load_graph(c)?;
    let a = build(c, &g)?;
    Ok(Outcome::ok(match c.format {
        Format::Json => json(&a.to_doc()),
        _ => a.render_text(),
    }))
}

#[derive(Serialize)]
struct RealFormDoc {
    involution: String,
    form: FormDoc,
}

fn realforms(c: &Common) -> Result<Outcome> {
    no_dot(c.format)?;
    let g = load_graph(c)?;
    let a = build(c, &g)?;
    let forms = enumerate_real_forms(&a, c.bound)?;
    if c.format == Format::Json {
        let docs: Vec<RealFormDoc> = forms
            .iter()
            .map(|f| RealFormDoc { involution: f.involution.to_cycle_string(), form: f.form.to_doc() })
            .collect();
        return Ok(Outcome::ok(json(&docs)));
    }
    let mut out = format!("real forms: {}\n", forms.len());
    for (i, f) in forms.iter().enumerate() {
        let _ = writeln!(out, "\nreal form {} (involution {})", i + 1, f.involution);
        out.push_str(&f.form.render_text(&a));
    }
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct FormReport {
    form: FormDoc,
    indecomposable: bool,
    real: bool,
}

fn form(c: &Common, d: &[i64], images: &[String], paper_basis: bool) -> Result<Outcome> {
    no_dot(c.format)?;
    if d.len() != images.len() {
        return Err(Error::InvalidDatum(format!("{} radicand(s) but {} --image flag(s)", d.len(), images.len())));
    }
    if paper_basis && d.len() != 1 {
        return Err(Error::InvalidDatum("--paper-basis needs exactly one radicand".into()));
    }
    let g = load_graph(c)?;
    let q = g.quotient_graph();
    let imgs: Vec<&str> = images.iter().map(String::as_str).collect();
    let datum = if d.is_empty() { DescentDatum::trivial() } else { DescentDatum::parse(&q, d, &imgs)? };
    let a = build(c, &g)?;
    let mode = if paper_basis { FormMode::PaperBasis } else { FormMode::Echelon };
    let f = compute_fixed_form(&a, &datum, mode)?;
    let indecomposable = is_indecomposable(&g, &datum)?;
    if c.format == Format::Json {
        return Ok(Outcome::ok(json(&FormReport { form: f.to_doc(), indecomposable, real: f.is_real() })));
    }
    let mut out = f.render_text(&a);
    let _ = writeln!(out, "indecomposable: {indecomposable}");
    let _ = writeln!(out, "real: {}", f.is_real());
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct ClassReport {
    members: Vec<DatumDoc>,
    real: bool,
}

fn classify(c: &Common, spec: &Path) -> Result<Outcome> {
    no_dot(c.format)?;
    let g = load_graph(c)?;
    let q = g.quotient_graph();
    let docs: Vec<DatumDoc> =
        serde_json::from_str(&read(spec)?).map_err(|e| Error::InvalidDocument(format!("{}: {e}", spec.display())))?;
    let data = docs.iter().map(|d| d.to_datum(&q)).collect::<Result<Vec<_>>>()?;
    let result = classify_rational_data(&g, &data, c.bound)?;
    let classes: Vec<ClassReport> = result
        .classes
        .iter()
        .zip(&result.real)
        .map(|(members, real)| ClassReport { members: members.iter().map(|&i| docs[i].clone()).collect(), real: *real })
        .collect();
    if c.format == Format::Json {
        return Ok(Outcome::ok(json(&classes)));
    }
    let mut out = format!("classes: {}\n", classes.len());
    for (i, (cls, idx)) in classes.iter().zip(&result.classes).enumerate() {
        let members: Vec<String> = cls
            .members
            .iter()
            .zip(idx)
            .map(|(m, j)| format!("#{} field {:?} images [{}]", j + 1, m.field, m.images.join(", ")))
            .collect();
        let _ = writeln!(out, "class {} ({}): {}", i + 1, if cls.real { "real" } else { "not real" }, members.join("; "));
    }
    Ok(Outcome::ok(out))
}

struct Report {
    lines: Vec<(String, std::result::Result<(), String>)>,
}

impl Report {
    fn item(&mut self, name: &str, result: std::result::Result<(), String>) {
        self.lines.push((name.to_string(), result));
    }

    fn expect(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.item(name, if ok { Ok(()) } else { Err(detail()) });
    }
}

fn check(c: &Common, table: Option<&Path>) -> Result<Outcome> {
    no_dot(c.format)?;
    let mut report = Report { lines: Vec::new() };
    let algebra = match table {
        Some(path) => {
            let doc: std::result::Result<AlgebraDoc, String> =
                serde_json::from_str(&read(path)?).map_err(|e| e.to_string());
            match doc.and_then(|d| GradedAlgebra::from_doc(&d).map_err(|e| e.to_string())) {
                Ok(a) => Some(a),
                Err(e) => {
                    report.item("document structure", Err(e));
                    None
                }
            }
        }
        None => Some(build(c, &load_graph(c)?)?),
    };
    if let Some(a) = algebra {
        check_algebra(c, &a, &mut report)?;
    }
    let failed = report.lines.iter().filter(|(_, r)| r.is_err()).count();
    let mut out = String::new();
    for (name, r) in &report.lines {
        match r {
            Ok(()) => {
                let _ = writeln!(out, "PASS {name}");
            }
            Err(e) => {
                let _ = writeln!(out, "FAIL {name}: {e}");
            }
        }
    }
    let _ = writeln!(out, "{} passed, {failed} failed", report.lines.len() - failed);
    Ok(Outcome { output: out, code: i32::from(failed > 0) })
}

fn check_algebra(c: &Common, a: &GradedAlgebra, report: &mut Report) -> Result<()> {
    let g = a.graph();
    let table = a.table();
    let rebuilt = build_algebra_with_budget(g, a.class(), c.budget)?;
    report.expect("table matches graph", rebuilt.table() == table, || {
        "structure constants differ from the graph's own".into()
    });
    report.expect("json round-trip", GradedAlgebra::from_doc(&a.to_doc()).ok().as_ref() == Some(a), || {
        "emitted document does not parse back to the same algebra".into()
    });
    report.item(
        "jacobi identity",
        table.jacobi_violation().map_or(Ok(()), |(i, j, k)| Err(format!("fails on basis triple ({}, {}, {})", i + 1, j + 1, k + 1))),
    );
    report.item(
        "grading",
        table.grading_violation().map_or(Ok(()), |(i, j)| Err(format!("[e{}, e{}] leaves its degree", i + 1, j + 1))),
    );
    let dims = a.graded_dimensions();
    if a.class() >= 2 {
        report.expect("degree-2 dimension equals edge count", dims[1] == g.edge_count(), || {
            format!("{} != {}", dims[1], g.edge_count())
        });
    }
    let series = table.lower_central_series();
    let expected = a.lower_central_dims();
    report.expect("lower central series", series == expected, || format!("{series:?} != {expected:?}"));
    let isolated: Vec<usize> = (0..g.vertex_count()).filter(|&v| a.class() == 1 || g.degree(v) == 0).collect();
    let center = a.center_projection();
    report.expect("center projection equals isolated vertices", center.as_ref().ok() == Some(&isolated), || {
        format!("{center:?} != {isolated:?}")
    });
    let q = g.quotient_graph();
    let group = quotient_automorphisms(&q, c.bound)?;
    let lifts: Vec<_> = group.elements().iter().map(|phi| splitting_r(&q, phi)).collect();
    report.expect(
        "splitting morphism",
        group.elements().iter().zip(&lifts).all(|(phi, r)| {
            g.is_automorphism(r.images())
                && project_automorphism(&q, r) == *phi
                && q.components().iter().enumerate().all(|(l, comp)| phi.apply(l) != l || comp.iter().all(|&v| r.apply(v) == v))
        }) && group.elements().iter().zip(&lifts).all(|(x, rx)| {
            group.elements().iter().zip(&lifts).all(|(y, ry)| splitting_r(&q, &x.compose(y)) == rx.compose(ry))
        }),
        || "r is not a section homomorphism".into(),
    );
    if g.vertex_count() <= c.bound {
        let direct = graph_automorphisms(g, c.bound)?.order() as u128;
        let formula = graph_automorphism_count(g, c.bound)?;
        report.expect("automorphism count product formula", direct == formula, || format!("{direct} != {formula}"));
    }
    let mut induced_ok = true;
    for r in &lifts {
        let f = a.induced_automorphism(r)?;
        induced_ok &= f.preserves_brackets(table) && f.is_invertible();
    }
    report.expect("induced automorphisms preserve brackets", induced_ok, || "an induced map breaks a bracket".into());
    Ok(())
}
