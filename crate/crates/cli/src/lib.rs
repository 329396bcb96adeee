//! The `opcat` command line: fixture suites, graph files, transforms and reports.

pub mod graph_file;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use opcat::equivalence::{extend_category, restrict_category, roundtrip_thick, roundtrip_thin, semi_ordered_extend};
use opcat::finset::Atom;
use opcat::fixtures::{fixture, letter_universe, FixtureName};
use opcat::graphs::{build_edge_contraction, graph_fiber, mu_sign, GraphMor};
use opcat::opcat::{check_axioms_on, pi0, Enumeration, Mode, OperadicCategory};
use opcat::report::{AxiomReport, Record, Status};
use opcat::with_fixture;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use graph_file::{parse_graph_file, parse_morphism_file, GraphFile, MorphismFile, ParseError};
pub use suites::{run_suites, Suite};

#[derive(Parser, Debug)]
#[command(name = "opcat", version, about = "Checks operadic categories, graphs and operads on bounded enumerations")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run checker suites on a fixture.
    Check {
        #[arg(value_parser = parse_fixture)]
        fixture: FixtureName,
        /// Fixture bound (see README for its meaning per fixture).
        #[arg(long)]
        bound: Option<usize>,
        /// Suites to run; repeatable. Defaults to all of them.
        #[arg(long, value_enum)]
        suite: Vec<Suite>,
    },
    /// Read, query and transform graph files.
    Graph {
        #[command(subcommand)]
        action: GraphCommand,
    },
    /// Extend, restrict or semi-order a fixture and check the result.
    Transform {
        #[arg(value_enum)]
        kind: TransformKind,
        #[arg(value_parser = parse_fixture)]
        fixture: FixtureName,
        #[arg(long)]
        bound: Option<usize>,
        /// Size of the atom universe for extensions (default: the bound).
        #[arg(long)]
        universe: Option<usize>,
    },
    /// Connected components of a fixture.
    Pi0 {
        #[arg(value_parser = parse_fixture)]
        fixture: FixtureName,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Emit a report over several fixtures, or re-render a saved JSON report.
    Report {
        /// A JSON report to re-render instead of running suites.
        #[arg(long = "from")]
        from: Option<PathBuf>,
        /// Fixtures to include; repeatable. Defaults to all.
        #[arg(long, value_parser = parse_fixture)]
        fixture: Vec<FixtureName>,
        #[arg(long)]
        bound: Option<usize>,
        /// Suites to run; defaults to axioms, cleavage and unitality.
        #[arg(long, value_enum)]
        suite: Vec<Suite>,
    },
}

#[derive(Args, Debug)]
pub struct GraphInput {
    /// The JSON file to read.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = GraphMode::Thick)]
    pub mode: GraphMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphMode {
    Thick,
    Thin,
}

impl From<GraphMode> for Mode {
    fn from(m: GraphMode) -> Mode {
        match m {
            GraphMode::Thick => Mode::Thick,
            GraphMode::Thin => Mode::Thin,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum GraphCommand {
    /// Validate a graph or morphism file.
    Validate {
        #[command(flatten)]
        input: GraphInput,
    },
    /// The fiber over a vertex. A graph file is read as its identity, whose
    /// fiber over a vertex is the corolla there; a morphism file is used as given.
    Fiber {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        vertex: String,
    },
    /// Compose `second ∘ first` from a file with members "first" and "second".
    Compose {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Contract the edges through the given flags.
    Contract {
        #[command(flatten)]
        input: GraphInput,
        /// A flag on an edge to contract; repeatable.
        #[arg(long)]
        edge: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformKind {
    Extend,
    Restrict,
    SemiOrdered,
}

fn parse_fixture(s: &str) -> Result<FixtureName, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = FixtureName::ALL.iter().map(|n| n.as_str()).collect();
        format!("unknown fixture {s:?}; expected one of {}", names.join(", "))
    })
}

/// A flat list of report lines; its JSON form is an array of records.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report(pub Vec<Record>);

impl Report {
    pub fn from_reports<'a>(reports: impl IntoIterator<Item = &'a AxiomReport>) -> Report {
        Report(reports.into_iter().flat_map(AxiomReport::records).collect())
    }

    pub fn passed(&self) -> bool {
        self.0.iter().all(|r| r.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = String::new();
                for r in &self.0 {
                    s.push_str(&r.to_string());
                    s.push('\n');
                }
                let failing = self.0.iter().filter(|r| r.status == Status::Fail).count();
                s.push_str(&match failing {
                    0 => "result: pass\n".to_string(),
                    n => format!("result: fail ({n} failing)\n"),
                });
                s
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("records serialize");
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] opcat::Error),
}

/// What a command produced: text for stdout and the exit status.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parsed<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn report_outcome(reports: &[AxiomReport], format: Format) -> Outcome {
    let r = Report::from_reports(reports);
    Outcome { stdout: r.render(format), code: r.exit_code() }
}

/// Runs the command line and writes to the given streams; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Check { fixture, bound, suite } => {
            let suites = if suite.is_empty() { Suite::ALL.to_vec() } else { suite.clone() };
            Ok(report_outcome(&run_suites(*fixture, *bound, &suites)?, format))
        }
        Command::Graph { action } => graph_command(action, format),
        Command::Transform { kind, fixture, bound, universe } => transform(*kind, *fixture, *bound, *universe, format),
        Command::Pi0 { fixture: name, bound } => {
            let fx = fixture(*name, None, *bound)?;
            let components: Vec<Component> = with_fixture!(&fx, |cat| {
                pi0(cat)?
                    .components
                    .into_iter()
                    .map(|(id, objs)| Component { id, objects: objs.iter().map(ToString::to_string).collect() })
                    .collect()
            });
            let stdout = match format {
                Format::Json => json(&Pi0Output { fixture: name.to_string(), components }),
                Format::Text => {
                    components.iter().map(|c| format!("{} ({} objects)\n", c.id, c.objects.len())).collect()
                }
            };
            Ok(Outcome { stdout, code: 0 })
        }
        Command::Report { from, fixture, bound, suite } => {
            if let Some(path) = from {
                let report: Report = parsed(path, graph_file::from_json(&read(path)?))?;
                return Ok(Outcome { stdout: report.render(format), code: report.exit_code() });
            }
            let names = if fixture.is_empty() { FixtureName::ALL.to_vec() } else { fixture.clone() };
            let suites = if suite.is_empty() { Suite::CATEGORY.to_vec() } else { suite.clone() };
            let mut reports = Vec::new();
            for n in names {
                reports.extend(run_suites(n, *bound, &suites)?);
            }
            Ok(report_outcome(&reports, format))
        }
    }
}

#[derive(Serialize)]
struct Component {
    id: String,
    objects: Vec<String>,
}

#[derive(Serialize)]
struct Pi0Output {
    fixture: String,
    components: Vec<Component>,
}

#[derive(Serialize)]
struct TransformSummary<'a> {
    category: String,
    objects: usize,
    morphisms: usize,
    records: &'a [Record],
}

fn summarize<C: OperadicCategory>(cat: &C, roundtrip: Option<AxiomReport>, format: Format) -> Outcome {
    let en = Enumeration::new(cat);
    let mut reports = vec![check_axioms_on(cat, &en)];
    reports.extend(roundtrip);
    let report = Report::from_reports(&reports);
    let (objects, morphisms) = (en.objects.len(), en.morphism_count());
    let stdout = match format {
        Format::Json => json(&TransformSummary { category: cat.name(), objects, morphisms, records: &report.0 }),
        Format::Text => format!("{}: {objects} objects, {morphisms} morphisms\n{}", cat.name(), report.render(format)),
    };
    Outcome { stdout, code: report.exit_code() }
}

// Some fixtures are `Copy`; the macro clones uniformly.
#[allow(clippy::clone_on_copy)]
fn transform(
    kind: TransformKind,
    name: FixtureName,
    bound: Option<usize>,
    universe: Option<usize>,
    format: Format,
) -> Result<Outcome, CliError> {
    let fx = fixture(name, None, bound)?;
    let universe = letter_universe(universe.unwrap_or(bound.unwrap_or(name.default_bound())));
    Ok(with_fixture!(fx, |cat| match kind {
        TransformKind::Extend => {
            let e = extend_category(cat.clone(), universe)?;
            summarize(&e, Some(roundtrip_thin(&cat)?), format)
        }
        TransformKind::SemiOrdered => summarize(&semi_ordered_extend(cat, universe)?, None, format),
        TransformKind::Restrict => {
            let r = restrict_category(cat.clone())?;
            summarize(&r, Some(roundtrip_thick(&cat)?), format)
        }
    }))
}

fn graph_command(cmd: &GraphCommand, format: Format) -> Result<Outcome, CliError> {
    match cmd {
        GraphCommand::Validate { input } => {
            let text = read(&input.input)?;
            let value: Value = parsed(&input.input, graph_file::from_json(&text))?;
            let report = if is_morphism(&value) {
                let m: MorphismFile = parsed(&input.input, graph_file::from_value(value))?;
                match m.to_morphism() {
                    Ok(m) => opcat::graphs::validate_graph_morphism(&m),
                    Err(ParseError::Invalid(report)) => *report,
                    Err(e) => return Err(CliError::Parse { path: input.input.display().to_string(), source: e }),
                }
            } else {
                let g: GraphFile = parsed(&input.input, graph_file::from_value(value))?;
                parsed(&input.input, g.to_graph())?.validate()
            };
            Ok(report_outcome(&[report], format))
        }
        GraphCommand::Fiber { input, vertex } => {
            let text = read(&input.input)?;
            let value: Value = parsed(&input.input, graph_file::from_json(&text))?;
            let x = Atom::new(vertex);
            let m: GraphMor = if is_morphism(&value) {
                let m: MorphismFile = parsed(&input.input, graph_file::from_value(value))?;
                parsed(&input.input, m.to_morphism())?
            } else {
                let g: GraphFile = parsed(&input.input, graph_file::from_value(value))?;
                let g = Arc::new(parsed(&input.input, g.to_graph())?);
                opcat::graphs::GrCategory::new(input.mode.into(), opcat::fixtures::gr_bound(0)).identity(&g)
            };
            let fiber = graph_fiber(&m, &x, input.mode.into())?;
            Ok(Outcome { stdout: json(&GraphFile::from_graph(&fiber)), code: 0 })
        }
        GraphCommand::Compose { input } => {
            let file: graph_file::CompositionFile = parsed(&input.input, graph_file::from_json(&read(&input.input)?))?;
            let f = parsed(&input.input, file.first.to_morphism_at("/first"))?;
            let g = parsed(&input.input, file.second.to_morphism_at("/second"))?;
            let cat = opcat::graphs::GrCategory::new(input.mode.into(), opcat::fixtures::gr_bound(0));
            let h = cat.compose(&g, &f)?;
            Ok(Outcome { stdout: json(&MorphismFile::from_morphism(&h)), code: 0 })
        }
        GraphCommand::Contract { input, edge } => {
            let g = parsed(&input.input, parse_graph_file(&read(&input.input)?))?;
            if edge.is_empty() {
                return Err(CliError::Usage("name at least one --edge flag".into()));
            }
            let flags: Vec<Atom> = edge.iter().map(|h| Atom::new(h)).collect();
            let m = build_edge_contraction(&Arc::new(g), &flags, input.mode.into())?;
            let out = ContractOutput { morphism: MorphismFile::from_morphism(&m), sign: mu_sign(&m).as_i64() };
            Ok(Outcome { stdout: json(&out), code: 0 })
        }
    }
}

#[derive(Serialize)]
struct ContractOutput {
    morphism: MorphismFile,
    /// The odd ζ composition sign of the contraction.
    sign: i64,
}

fn is_morphism(v: &Value) -> bool {
    v.get("source").is_some()
}
