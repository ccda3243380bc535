//! The `ccc` command-line front end. Everything goes through [`run`] so the
//! binary and the tests share one code path.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::families::{build_family_with_limit, build_group, FamilyError, FamilySpec, GroupSpec};
use crate::graph::{ccc_graph, detect_clique_union, export_dot, CliqueDecomposition, GraphError, SimpleGraph};
use crate::group::{
    commuting_probability, conjugacy_data, distinct_centralizer_count, frobenius_decomposition,
    quotient_by_center, recognize_structure, FiniteGroup, GroupDocument, GroupError,
    DEFAULT_SUBGROUP_BUDGET,
};
use crate::predictions::{
    closed_form_indices, predicted_decomposition, quotient_prediction, verify_family,
    verify_group, verify_quotient_cases, PredictedStructure, PredictionError, QuotientCase,
    QuotientKind, VerificationRecord,
};
use crate::presentation::{coset_enumerate, Presentation, PresentationError, COSET_LIMIT_ENV, DEFAULT_COSET_LIMIT};
use crate::zagreb::{report_from_decomposition, zagreb_report, Verdict, ZagrebReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Prediction(#[from] PredictionError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Debug, Parser)]
#[command(name = "ccc", version, about = "Commuting conjugacy class graphs and their Zagreb indices")]
struct Cli {
    /// Maximum number of cosets during enumeration.
    #[arg(long, global = true, env = COSET_LIMIT_ENV, default_value_t = DEFAULT_COSET_LIMIT)]
    coset_limit: usize,

    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a group and describe it.
    Family {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Also write the group's multiplication table as JSON.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Emit the CCC graph of a group (or a mini-syntax graph).
    Ccc {
        #[command(flatten)]
        source: GroupSource,
        /// Graph mini-syntax, e.g. `star:5+K:3`.
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Zagreb indices and the conjecture verdict.
    Report {
        #[command(flatten)]
        source: GroupSource,
        /// Clique union such as `2K4 + K1`.
        #[arg(long)]
        decomposition: Option<String>,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Compare brute force with the predicted structure.
    Verify {
        #[command(flatten)]
        source: GroupSource,
        /// Quotient hypothesis, e.g. `frobenius-pq:3,7`; defaults to every
        /// hypothesis the group satisfies.
        #[arg(long)]
        case: Option<String>,
        /// |Z(G)| for `--case`; defaults to the actual center size.
        #[arg(long)]
        x: Option<u64>,
        /// Run the central-quotient checks even for a family member.
        #[arg(long)]
        quotients: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Sweep a family or a quotient case over parameter ranges.
    Scan(ScanArgs),
    /// Commuting probability, centralizers, Frobenius structure.
    Props {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Args, Default)]
struct GroupSource {
    /// Family member, e.g. `dihedral:12`, `unm:2,6`, `gpmn:3,1,2`.
    #[arg(long)]
    family: Option<String>,
    /// Auxiliary group, e.g. `frobenius:7,3`, `heisenberg:3`, `a4`.
    #[arg(long)]
    aux: Option<String>,
    /// Group multiplication table in JSON.
    #[arg(long)]
    group_json: Option<PathBuf>,
    /// Finite presentation, e.g. `a, b | a^4, b^2, b a b^-1 a`.
    #[arg(long)]
    presentation: Option<String>,
}

struct Loaded {
    group: FiniteGroup,
    family: Option<FamilySpec>,
}

impl GroupSource {
    fn given(&self) -> usize {
        [
            self.family.is_some(),
            self.aux.is_some(),
            self.group_json.is_some(),
            self.presentation.is_some(),
        ]
        .into_iter()
        .filter(|&b| b)
        .count()
    }

    fn load(&self, coset_limit: usize) -> Result<Option<Loaded>, CliError> {
        if self.given() > 1 {
            return usage("give only one of --family, --aux, --group-json, --presentation");
        }
        if let Some(f) = &self.family {
            let spec: FamilySpec = f.parse()?;
            let group = build_family_with_limit(&spec, coset_limit)?;
            return Ok(Some(Loaded { group, family: Some(spec) }));
        }
        if let Some(a) = &self.aux {
            let spec = GroupSpec::Aux(a.parse()?);
            return Ok(Some(Loaded { group: build_group(&spec)?, family: None }));
        }
        if let Some(path) = &self.group_json {
            let text = read_file(path)?;
            let doc: GroupDocument = serde_json::from_str(&text).map_err(|source| CliError::Json {
                path: path.display().to_string(),
                source,
            })?;
            return Ok(Some(Loaded { group: FiniteGroup::from_document(&doc)?, family: None }));
        }
        if let Some(text) = &self.presentation {
            let p = Presentation::parse(text)?;
            let group = coset_enumerate(&p, coset_limit)?.with_name(format!("<{}>", text.trim()));
            return Ok(Some(Loaded { group, family: None }));
        }
        Ok(None)
    }

    fn require(&self, coset_limit: usize) -> Result<Loaded, CliError> {
        self.load(coset_limit)?
            .map_or_else(|| usage("missing group: use --family, --aux, --group-json or --presentation"), Ok)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Family name: dihedral, dicyclic, semidihedral, v8m, unm, gpmn.
    #[arg(long, conflicts_with = "case")]
    family: Option<String>,
    /// Quotient case name: dihedral-quotient, elem-abelian, frobenius-pq,
    /// frobenius-p2q, p3-abelian, p3-nonabelian.
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    m: Option<Range>,
    #[arg(long)]
    n: Option<Range>,
    #[arg(long)]
    p: Option<Range>,
    #[arg(long)]
    q: Option<Range>,
    #[arg(long)]
    k: Option<Range>,
    #[arg(long)]
    x: Option<Range>,
    /// Use only the closed forms; no groups are built.
    #[arg(long)]
    closed_only: bool,
    /// Skip family members larger than this.
    #[arg(long)]
    max_order: Option<u64>,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Inclusive integer values: `3..40`, `7`, or a comma list of either.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Range(pub Vec<u64>);

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut values = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad integer {t:?} in {s:?}"));
            match item.split_once("..") {
                Some((lo, hi)) => {
                    let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
                    if lo > hi {
                        return Err(format!("empty range {item:?}"));
                    }
                    values.extend(lo..=hi);
                }
                None => values.push(num(item)?),
            }
        }
        Ok(Range(values))
    }
}

/// What a sweep iterates over.
#[derive(Debug, Clone)]
pub enum ScanTarget {
    Family(String),
    Case(String),
}

/// A validated sweep request.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub target: ScanTarget,
    /// Named parameter ranges in the order the target expects.
    pub ranges: Vec<(&'static str, Vec<u64>)>,
    pub x: Vec<u64>,
    pub closed_only: bool,
    pub max_order: Option<u64>,
    pub coset_limit: usize,
    pub jobs: usize,
}

/// One output line of `report`, `verify` and `scan`; the CSV schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub family: String,
    pub params: String,
    pub vertices: String,
    pub edges: String,
    pub m1: String,
    pub m2: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    pub pred_m1: String,
    pub pred_m2: String,
    pub printed_m1: String,
    pub printed_m2: String,
    pub case_label: String,
    pub structure_match: Option<bool>,
    pub equality_as_predicted: Option<bool>,
    pub discrepancy_notes: String,
    #[serde(skip)]
    pub failed: bool,
}

impl Row {
    fn from_report(family: &str, params: &str, r: &ZagrebReport) -> Row {
        Row {
            family: family.to_string(),
            params: params.to_string(),
            vertices: r.num_vertices.to_string(),
            edges: r.num_edges.to_string(),
            m1: r.m1.to_string(),
            m2: r.m2.to_string(),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            verdict: r.verdict,
            pred_m1: String::new(),
            pred_m2: String::new(),
            printed_m1: String::new(),
            printed_m2: String::new(),
            case_label: String::new(),
            structure_match: None,
            equality_as_predicted: None,
            discrepancy_notes: String::new(),
            failed: r.verdict == Verdict::Violated,
        }
    }

    fn with_prediction(mut self, p: &PredictedStructure) -> Row {
        self.pred_m1 = p.closed_m1.to_string();
        self.pred_m2 = p.closed_m2.to_string();
        if let Some(printed) = p.printed.first() {
            self.printed_m1 = printed.m1.to_string();
            self.printed_m2 = printed.m2.to_string();
        }
        self.case_label = p.case_label.clone();
        self.discrepancy_notes = p.notes.join("; ");
        self
    }

    fn from_record(family: &str, params: &str, rec: &VerificationRecord) -> Row {
        let mut row = Row::from_report(family, params, &rec.report).with_prediction(&rec.predicted);
        row.structure_match = Some(rec.structure_match);
        row.equality_as_predicted = Some(rec.equality_as_predicted);
        row.discrepancy_notes = rec.discrepancy_notes.join("; ");
        row.failed = rec.is_failure();
        row
    }

    /// Row for a prediction alone: indices come from the decomposition.
    fn from_closed_form(family: &str, params: &str, p: &PredictedStructure) -> Row {
        let report = report_from_decomposition(&p.decomposition);
        let mut row = Row::from_report(family, params, &report).with_prediction(p);
        row.equality_as_predicted = Some(report.verdict.is_equality() == p.expected_equality);
        row
    }
}

const TABLE_COLUMNS: [&str; 11] = [
    "family", "params", "|V|", "|E|", "M1", "M2", "lhs", "rhs", "verdict", "match", "eq-as-pred",
];

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "-",
    }
}

/// Renders rows; output is byte-stable for equal input.
pub fn format_rows(rows: &[Row], format: &str) -> Result<String, CliError> {
    match format {
        "csv" => {
            let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(Vec::new());
            if rows.is_empty() {
                w.write_record(CSV_HEADER).expect("in-memory write");
            }
            for r in rows {
                w.serialize(r).expect("in-memory write");
            }
            Ok(String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8"))
        }
        "json" => Ok(serde_json::to_string_pretty(rows).expect("rows serialize") + "\n"),
        "table" => {
            let cells: Vec<[String; 11]> = rows
                .iter()
                .map(|r| {
                    [
                        r.family.clone(),
                        r.params.clone(),
                        r.vertices.clone(),
                        r.edges.clone(),
                        r.m1.clone(),
                        r.m2.clone(),
                        r.lhs.clone(),
                        r.rhs.clone(),
                        r.verdict.to_string(),
                        flag(r.structure_match).to_string(),
                        flag(r.equality_as_predicted).to_string(),
                    ]
                })
                .collect();
            let mut widths = TABLE_COLUMNS.map(str::len);
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let mut out = String::new();
            let line = |out: &mut String, items: &[&str]| {
                let padded: Vec<String> = items
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                out.push_str(padded.join("  ").trim_end());
                out.push('\n');
            };
            line(&mut out, &TABLE_COLUMNS);
            for row in &cells {
                let items: Vec<&str> = row.iter().map(String::as_str).collect();
                line(&mut out, &items);
            }
            for r in rows.iter().filter(|r| !r.discrepancy_notes.is_empty()) {
                let _ = writeln!(out, "note [{} {}]: {}", r.family, r.params, r.discrepancy_notes);
            }
            Ok(out)
        }
        other => usage(format!("unknown format {other:?}")),
    }
}

pub const CSV_HEADER: [&str; 17] = [
    "family", "params", "vertices", "edges", "m1", "m2", "lhs", "rhs", "verdict", "pred_m1",
    "pred_m2", "printed_m1", "printed_m2", "case_label", "structure_match",
    "equality_as_predicted", "discrepancy_notes",
];

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Table => "table",
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// The text of a successful command plus whether anything failed.
struct Outcome {
    text: String,
    failures: Vec<Row>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failures: Vec::new() }
    }

    fn rows(rows: Vec<Row>, text: String) -> Self {
        let failures = rows.into_iter().filter(|r| r.failed).collect();
        Outcome { text, failures }
    }
}

/// Runs the CLI with process stdout/stderr and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Exit codes: 0 success, 1 usage or validation error, 2 if any verdict is
/// violated or a prediction mismatched.
pub fn run_with_io<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if cli.coset_limit == 0 {
        let _ = writeln!(err, "error: --coset-limit must be at least 1");
        return 1;
    }
    match execute(&cli, err) {
        Ok(outcome) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &outcome.text).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                }),
                None => out.write_all(outcome.text.as_bytes()).map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                }),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            if outcome.failures.is_empty() {
                0
            } else {
                let summary: Vec<_> = outcome
                    .failures
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "family": r.family,
                            "params": r.params,
                            "verdict": r.verdict,
                            "structure_match": r.structure_match,
                            "notes": r.discrepancy_notes,
                        })
                    })
                    .collect();
                let _ = writeln!(err, "{}", serde_json::json!({ "failures": summary }));
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let limit = cli.coset_limit;
    match &cli.command {
        Command::Family { source, format, dump } => cmd_family(source.require(limit)?, *format, dump.as_deref()),
        Command::Ccc { source, graph, format } => cmd_ccc(source, graph.as_deref(), *format, limit),
        Command::Report { source, decomposition, graph, format } => {
            cmd_report(source, decomposition.as_deref(), graph.as_deref(), *format, limit)
        }
        Command::Verify { source, case, x, quotients, format } => {
            cmd_verify(source.require(limit)?, case.as_deref(), *x, *quotients, *format, limit)
        }
        Command::Scan(args) => {
            let config = scan_config(args, limit)?;
            let (rows, skipped) = run_scan(&config)?;
            if !skipped.is_empty() {
                let _ = writeln!(err, "skipped {} parameter tuple(s): {}", skipped.len(), skipped.join(", "));
            }
            let text = format_rows(&rows, format_name(args.format))?;
            Ok(Outcome::rows(rows, text))
        }
        Command::Props { source, format } => cmd_props(source.require(limit)?, *format),
    }
}

#[derive(Serialize)]
struct GroupDescription {
    name: String,
    order: usize,
    generators: Vec<String>,
    center_size: usize,
    class_sizes: Vec<usize>,
    structure: String,
    center_quotient: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    presentation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted_ccc: Option<String>,
}

fn cmd_family(loaded: Loaded, format: Format, dump: Option<&Path>) -> Result<Outcome, CliError> {
    let g = &loaded.group;
    let data = conjugacy_data(g);
    let desc = GroupDescription {
        name: g.name().to_string(),
        order: g.order(),
        generators: g.generators().iter().map(|(l, _)| l.clone()).collect(),
        center_size: data.center.len(),
        class_sizes: data.class_sizes(),
        structure: recognize_structure(g).to_string(),
        center_quotient: recognize_structure(&quotient_by_center(g)).to_string(),
        presentation: loaded
            .family
            .as_ref()
            .map(|f| crate::families::family_presentation(f).map(|p| p.to_string()))
            .transpose()?,
        predicted_ccc: loaded
            .family
            .as_ref()
            .map(|f| predicted_decomposition(f).map(|p| p.decomposition.to_string()))
            .transpose()?,
    };
    if let Some(path) = dump {
        let json = serde_json::to_string(&g.to_document()).expect("group document serializes");
        std::fs::write(path, json + "\n").map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&desc).expect("serializes") + "\n",
        Format::Csv => usage("family supports --format table or json")?,
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "group          {}", desc.name);
            let _ = writeln!(s, "order          {}", desc.order);
            let _ = writeln!(s, "generators     {}", desc.generators.join(", "));
            if let Some(p) = &desc.presentation {
                let _ = writeln!(s, "presentation   {p}");
            }
            let _ = writeln!(s, "center         {}", desc.center_size);
            let _ = writeln!(s, "class sizes    {:?}", desc.class_sizes);
            let _ = writeln!(s, "structure      {}", desc.structure);
            let _ = writeln!(s, "G/Z            {}", desc.center_quotient);
            if let Some(p) = &desc.predicted_ccc {
                let _ = writeln!(s, "predicted CCC  {p}");
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_ccc(source: &GroupSource, graph: Option<&str>, format: GraphFormat, limit: usize) -> Result<Outcome, CliError> {
    let (g, name) = match (graph, source.load(limit)?) {
        (Some(_), Some(_)) => return usage("--graph cannot be combined with a group"),
        (Some(text), None) => (text.parse::<SimpleGraph>()?, text.to_string()),
        (None, Some(l)) => (ccc_graph(&l.group), format!("CCC({})", l.group.name())),
        (None, None) => return usage("missing input: give a group or --graph"),
    };
    let text = match format {
        GraphFormat::Dot => export_dot(&g, &name),
        GraphFormat::Json => serde_json::to_string_pretty(&g.to_document()).expect("serializes") + "\n",
    };
    Ok(Outcome::ok(text))
}

fn cmd_report(
    source: &GroupSource,
    decomposition: Option<&str>,
    graph: Option<&str>,
    format: Format,
    limit: usize,
) -> Result<Outcome, CliError> {
    let group = source.load(limit)?;
    let given = usize::from(group.is_some()) + usize::from(decomposition.is_some()) + usize::from(graph.is_some());
    if given != 1 {
        return usage("give exactly one of a group, --decomposition or --graph");
    }
    let (family, params, report, decomp) = if let Some(text) = decomposition {
        let d: CliqueDecomposition = text.parse().map_err(|e| {
            CliError::Usage(format!(
                "--decomposition {text:?} is not a clique union ({e}); use --graph for other graphs"
            ))
        })?;
        ("decomposition".to_string(), d.to_string(), report_from_decomposition(&d), Some(d))
    } else if let Some(text) = graph {
        let g: SimpleGraph = text.parse()?;
        ("graph".to_string(), text.to_string(), zagreb_report(&g), detect_clique_union(&g))
    } else {
        let loaded = group.expect("checked above");
        let (family, params) = match &loaded.family {
            Some(f) => (f.family_name().to_string(), f.params_string()),
            None => (loaded.group.name().to_string(), String::new()),
        };
        let g = ccc_graph(&loaded.group);
        (family, params, zagreb_report(&g), detect_clique_union(&g))
    };
    let row = Row::from_report(&family, &params, &report);
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                family: &'a str,
                params: &'a str,
                decomposition: Option<String>,
                report: &'a ZagrebReport,
            }
            let doc = Doc {
                family: &family,
                params: &params,
                decomposition: decomp.map(|d| d.to_string()),
                report: &report,
            };
            serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
        }
        f => format_rows(std::slice::from_ref(&row), format_name(f))?,
    };
    Ok(Outcome::rows(vec![row], text))
}

fn cmd_verify(
    loaded: Loaded,
    case: Option<&str>,
    x: Option<u64>,
    quotients: bool,
    format: Format,
    limit: usize,
) -> Result<Outcome, CliError> {
    let group = &loaded.group;
    let name = group.name().to_string();
    let mut records: Vec<(String, String, VerificationRecord)> = Vec::new();
    if let Some(case) = case {
        let kind: QuotientKind = case.parse()?;
        let x = x.unwrap_or(conjugacy_data(group).center.len() as u64);
        let qc = QuotientCase { kind, x };
        let preds = quotient_prediction(&qc)?;
        records.push((name, qc.to_string(), verify_group(group, &preds)));
    } else if let (Some(spec), false) = (&loaded.family, quotients) {
        if x.is_some() {
            return usage("--x only applies together with --case");
        }
        let rec = verify_family(spec, limit)?;
        records.push((spec.family_name().to_string(), spec.params_string(), rec));
    } else {
        let cases = verify_quotient_cases(group);
        if cases.is_empty() {
            return usage(format!(
                "no supported prediction applies to {name} (G/Z is {}); use `report` instead",
                recognize_structure(&quotient_by_center(group))
            ));
        }
        for (qc, rec) in cases {
            records.push((name.clone(), qc.to_string(), rec?));
        }
    }
    let rows: Vec<Row> = records.iter().map(|(f, p, r)| Row::from_record(f, p, r)).collect();
    let text = match format {
        Format::Json => {
            let recs: Vec<&VerificationRecord> = records.iter().map(|(_, _, r)| r).collect();
            serde_json::to_string_pretty(&recs).expect("serializes") + "\n"
        }
        f => format_rows(&rows, format_name(f))?,
    };
    Ok(Outcome::rows(rows, text))
}

#[derive(Serialize)]
struct Props {
    name: String,
    order: usize,
    classes: usize,
    center_size: usize,
    commuting_probability: String,
    distinct_centralizers: usize,
    frobenius: Option<(usize, usize)>,
    frobenius_search_exhausted: bool,
    structure: String,
    center_quotient: String,
    ccc: Option<String>,
    verdict: Verdict,
}

fn cmd_props(loaded: Loaded, format: Format) -> Result<Outcome, CliError> {
    let g = &loaded.group;
    let data = conjugacy_data(g);
    let (frobenius, exhausted) = match frobenius_decomposition(g, DEFAULT_SUBGROUP_BUDGET) {
        Ok(split) => (split.map(|s| (s.kernel_order, s.complement_order)), false),
        Err(GroupError::CapExceeded(_)) => (None, true),
        Err(e) => return Err(e.into()),
    };
    let graph = ccc_graph(g);
    let report = zagreb_report(&graph);
    let pr = commuting_probability(g);
    let props = Props {
        name: g.name().to_string(),
        order: g.order(),
        classes: data.num_classes(),
        center_size: data.center.len(),
        commuting_probability: format!("{}/{}", pr.numer(), pr.denom()),
        distinct_centralizers: distinct_centralizer_count(g),
        frobenius,
        frobenius_search_exhausted: exhausted,
        structure: recognize_structure(g).to_string(),
        center_quotient: recognize_structure(&quotient_by_center(g)).to_string(),
        ccc: detect_clique_union(&graph).map(|d| d.to_string()),
        verdict: report.verdict,
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&props).expect("serializes") + "\n",
        Format::Csv => usage("props supports --format table or json")?,
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "group                  {}", props.name);
            let _ = writeln!(s, "order                  {}", props.order);
            let _ = writeln!(s, "classes                {}", props.classes);
            let _ = writeln!(s, "center                 {}", props.center_size);
            let _ = writeln!(s, "Pr(G)                  {}", props.commuting_probability);
            let _ = writeln!(s, "distinct centralizers  {}", props.distinct_centralizers);
            let frob = match (props.frobenius, exhausted) {
                (Some((k, h)), _) => format!("Frobenius ({k},{h})  [kernel, complement]"),
                (None, true) => "unknown (subgroup budget exhausted)".to_string(),
                (None, false) => "not Frobenius".to_string(),
            };
            let _ = writeln!(s, "frobenius              {frob}");
            let _ = writeln!(s, "structure              {}", props.structure);
            let _ = writeln!(s, "G/Z                    {}", props.center_quotient);
            let _ = writeln!(s, "CCC                    {}", props.ccc.as_deref().unwrap_or("not a clique union"));
            let _ = writeln!(s, "verdict                {}", props.verdict);
            s
        }
    };
    let mut row = Row::from_report(g.name(), "", &report);
    row.failed = report.verdict == Verdict::Violated;
    Ok(Outcome::rows(vec![row], text))
}

fn family_params(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "dihedral" | "dicyclic" | "semidihedral" | "v8m" => &["m"],
        "unm" => &["n", "m"],
        "gpmn" => &["p", "m", "n"],
        _ => return None,
    })
}

fn case_params(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "dihedral-quotient" => &["m"],
        "elem-abelian" | "p3-abelian" | "p3-nonabelian" => &["p"],
        "frobenius-pq" | "frobenius-p2q" => &["p", "q"],
        _ => return None,
    })
}

fn scan_config(args: &ScanArgs, coset_limit: usize) -> Result<ScanConfig, CliError> {
    let given: [(&'static str, &Option<Range>); 6] = [
        ("m", &args.m),
        ("n", &args.n),
        ("p", &args.p),
        ("q", &args.q),
        ("k", &args.k),
        ("x", &args.x),
    ];
    let lookup = |name: &str| given.iter().find(|(n, _)| *n == name).and_then(|(_, r)| r.as_ref());
    let (target, mut wanted, optional): (ScanTarget, Vec<&'static str>, &[&str]) =
        match (&args.family, &args.case) {
            (Some(f), None) => {
                let f = f.to_ascii_lowercase();
                let params = family_params(&f).ok_or_else(|| CliError::Usage(format!("--family: unknown family {f:?}")))?;
                (ScanTarget::Family(f), params.to_vec(), &[])
            }
            (None, Some(c)) => {
                let c = c.to_ascii_lowercase();
                let params = case_params(&c).ok_or_else(|| CliError::Usage(format!("--case: unknown quotient case {c:?}")))?;
                let optional: &[&str] = if c == "p3-nonabelian" { &["k"] } else { &[] };
                (ScanTarget::Case(c), params.to_vec(), optional)
            }
            _ => return usage("scan needs exactly one of --family or --case"),
        };
    let is_case = matches!(target, ScanTarget::Case(_));
    for (name, range) in &given {
        let used = wanted.contains(name) || optional.contains(name) || (*name == "x" && is_case);
        if range.is_some() && !used {
            return usage(format!("--{name} does not apply to this scan"));
        }
    }
    if optional.iter().any(|o| lookup(o).is_some()) {
        wanted.extend_from_slice(optional);
    }
    let mut ranges = Vec::new();
    for name in wanted {
        let r = lookup(name).ok_or_else(|| CliError::Usage(format!("missing --{name}")))?;
        if r.0.is_empty() {
            return usage(format!("--{name}: empty range"));
        }
        ranges.push((name, r.0.clone()));
    }
    let x = if is_case {
        lookup("x").ok_or_else(|| CliError::Usage("missing --x".into()))?.0.clone()
    } else {
        Vec::new()
    };
    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if jobs == 0 {
        return usage("--jobs must be at least 1");
    }
    Ok(ScanConfig {
        target,
        ranges,
        x,
        closed_only: args.closed_only || is_case,
        max_order: args.max_order,
        coset_limit,
        jobs,
    })
}

fn cartesian(ranges: &[(&'static str, Vec<u64>)]) -> Vec<Vec<u64>> {
    ranges.iter().fold(vec![Vec::new()], |acc, (_, values)| {
        acc.into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect()
    })
}

enum Job {
    Family(FamilySpec),
    Case(QuotientCase),
}

/// Runs a sweep. Returns rows in parameter order and the labels of tuples
/// that were skipped as invalid or too large.
pub fn run_scan(config: &ScanConfig) -> Result<(Vec<Row>, Vec<String>), CliError> {
    let mut jobs = Vec::new();
    let mut skipped = Vec::new();
    for tuple in cartesian(&config.ranges) {
        let label = tuple.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match &config.target {
            ScanTarget::Family(name) => match FamilySpec::from_parts(name, &tuple) {
                Ok(spec) => {
                    let too_big = match (config.max_order, spec.order()) {
                        (Some(max), Some(order)) => order > max,
                        (Some(_), None) => true,
                        _ => false,
                    };
                    if too_big {
                        skipped.push(format!("{name}:{label}"));
                    } else {
                        jobs.push(Job::Family(spec));
                    }
                }
                Err(_) => skipped.push(format!("{name}:{label}")),
            },
            ScanTarget::Case(name) => match QuotientKind::from_str(&format!("{name}:{label}")) {
                Ok(kind) => jobs.extend(config.x.iter().map(|&x| Job::Case(QuotientCase { kind, x }))),
                Err(_) => skipped.push(format!("{name}:{label}")),
            },
        }
    }

    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    let workers = config.jobs.min(jobs.len()).max(1);
    std::thread::scope(|s| {
        for _ in 0..workers {
            let tx = tx.clone();
            let (next, jobs) = (&next, &jobs);
            s.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                if tx.send((i, scan_one(job, config))).is_err() {
                    break;
                }
            });
        }
    });
    drop(tx);

    let mut results: Vec<Option<Result<Vec<Row>, CliError>>> = (0..jobs.len()).map(|_| None).collect();
    for (i, r) in rx {
        results[i] = Some(r);
    }
    let mut rows = Vec::new();
    for (job, result) in jobs.iter().zip(results) {
        match result.expect("every job reports") {
            Ok(r) => rows.extend(r),
            // Cases whose x is incompatible with every shape are not errors
            // for a sweep, only for a single verification.
            Err(CliError::Prediction(PredictionError::Divisibility(_))) => {
                if let Job::Case(c) = job {
                    skipped.push(c.to_string());
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok((rows, skipped))
}

fn scan_one(job: &Job, config: &ScanConfig) -> Result<Vec<Row>, CliError> {
    match job {
        Job::Family(spec) => {
            let (family, params) = (spec.family_name(), spec.params_string());
            if config.closed_only {
                let pred = predicted_decomposition(spec)?;
                let mut row = Row::from_closed_form(family, &params, &pred);
                // Make sure the printed polynomial is shown even when the
                // prediction carries none.
                if row.printed_m1.is_empty() {
                    let (m1, m2) = closed_form_indices(spec)?;
                    row.printed_m1 = m1.to_string();
                    row.printed_m2 = m2.to_string();
                }
                Ok(vec![row])
            } else {
                let rec = verify_family(spec, config.coset_limit)?;
                Ok(vec![Row::from_record(family, &params, &rec)])
            }
        }
        Job::Case(case) => {
            let preds = quotient_prediction(case)?;
            let params = format!("{} x={}", case.kind, case.x);
            Ok(preds.iter().map(|p| Row::from_closed_form("quotient", &params, p)).collect())
        }
    }
}
