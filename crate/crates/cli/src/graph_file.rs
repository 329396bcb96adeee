//! The JSON interchange format for graphs and graph morphisms.
//!
//! Schema problems are reported with a JSON pointer to the offending member.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use opcat::finset::{Atom, FinSet, SetMap};
use opcat::graphs::{validate_graph_morphism, GlobalLabeledGraph, GraphMor};
use opcat::report::AxiomReport;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub flags: Vec<FlagEntry>,
    #[serde(default)]
    pub involution: Vec<(String, String)>,
    #[serde(default)]
    pub labels: Vec<LabelEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagEntry {
    pub id: String,
    pub vertex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelEntry {
    pub label: String,
    pub flag: String,
}

/// A morphism `source → target`. `flag_map` sends target flags to source
/// flags, `vertex_map` sends source vertices to target vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: GraphFile,
    pub target: GraphFile,
    pub flag_map: BTreeMap<String, String>,
    pub vertex_map: BTreeMap<String, String>,
}

/// Two morphisms to compose: `second ∘ first`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionFile {
    pub first: MorphismFile,
    pub second: MorphismFile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Not JSON at all.
    Syntax { line: usize, column: usize, message: String },
    /// Valid JSON violating the schema at `pointer`.
    Schema { pointer: String, message: String },
    /// A well-formed morphism file whose maps are not a graph morphism.
    Invalid(Box<AxiomReport>),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, column, message } => write!(f, "line {line} column {column}: {message}"),
            ParseError::Schema { pointer, message } => write!(f, "at {}: {message}", display_pointer(pointer)),
            ParseError::Invalid(report) => {
                write!(f, "not a graph morphism")?;
                if let Some(e) = report.first_failure() {
                    write!(f, ": {}", e.item)?;
                    if let Some(w) = &e.witness {
                        write!(f, " ({w})")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ParseError {}

fn display_pointer(p: &str) -> &str {
    if p.is_empty() {
        "/"
    } else {
        p
    }
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Schema { pointer: pointer.into(), message: message.into() }
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// Reads JSON text into `T`, locating type errors by pointer.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_value(value)
}

pub fn from_value<T: DeserializeOwned>(value: Value) -> Result<T, ParseError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let mut pointer = String::new();
        for seg in e.path().iter() {
            use serde_path_to_error::Segment;
            match seg {
                Segment::Seq { index } => pointer.push_str(&format!("/{index}")),
                Segment::Map { key } => pointer.push_str(&format!("/{}", escape(key))),
                Segment::Enum { variant } => pointer.push_str(&format!("/{}", escape(variant))),
                Segment::Unknown => {}
            }
        }
        schema(pointer, e.into_inner().to_string())
    })
}

impl GraphFile {
    /// Checks the schema invariants and builds the graph. `at` prefixes every
    /// reported pointer.
    pub fn to_graph_at(&self, at: &str) -> Result<GlobalLabeledGraph, ParseError> {
        if self.vertices.is_empty() {
            return Err(schema(format!("{at}/vertices"), "a graph needs at least one vertex"));
        }
        let mut vertices = BTreeSet::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !vertices.insert(v.as_str()) {
                return Err(schema(format!("{at}/vertices/{i}"), format!("duplicate vertex {v:?}")));
            }
        }
        let mut flags = BTreeSet::new();
        for (i, h) in self.flags.iter().enumerate() {
            if !flags.insert(h.id.as_str()) {
                return Err(schema(format!("{at}/flags/{i}/id"), format!("duplicate flag id {:?}", h.id)));
            }
            if !vertices.contains(h.vertex.as_str()) {
                return Err(schema(format!("{at}/flags/{i}/vertex"), format!("unknown vertex {:?}", h.vertex)));
            }
        }
        let mut paired = BTreeSet::new();
        for (i, (a, b)) in self.involution.iter().enumerate() {
            for (j, h) in [a, b].into_iter().enumerate() {
                if !flags.contains(h.as_str()) {
                    return Err(schema(format!("{at}/involution/{i}/{j}"), format!("unknown flag {h:?}")));
                }
            }
            if a == b {
                return Err(schema(
                    format!("{at}/involution/{i}"),
                    format!("{a:?} is paired with itself; omit fixed points"),
                ));
            }
            if !paired.insert(a.as_str()) || !paired.insert(b.as_str()) {
                return Err(schema(
                    format!("{at}/involution/{i}"),
                    format!("({a:?}, {b:?}) reuses a flag already paired, so this is not an involution"),
                ));
            }
        }
        let mut seen_labels = BTreeSet::new();
        let mut labelled = BTreeSet::new();
        for (i, l) in self.labels.iter().enumerate() {
            if !seen_labels.insert(l.label.as_str()) {
                return Err(schema(format!("{at}/labels/{i}/label"), format!("duplicate label {:?}", l.label)));
            }
            if !flags.contains(l.flag.as_str()) {
                return Err(schema(format!("{at}/labels/{i}/flag"), format!("unknown flag {:?}", l.flag)));
            }
            if paired.contains(l.flag.as_str()) {
                return Err(schema(
                    format!("{at}/labels/{i}/flag"),
                    format!("flag {:?} is on an edge, not a leg", l.flag),
                ));
            }
            if !labelled.insert(l.flag.as_str()) {
                return Err(schema(format!("{at}/labels/{i}/flag"), format!("leg {:?} carries two labels", l.flag)));
            }
        }
        let unlabelled: Vec<&str> =
            flags.iter().filter(|h| !paired.contains(*h) && !labelled.contains(*h)).copied().collect();
        if !unlabelled.is_empty() {
            return Err(schema(format!("{at}/labels"), format!("legs without a label: {}", unlabelled.join(", "))));
        }
        let attach: Vec<(&str, &str)> = self.flags.iter().map(|h| (h.id.as_str(), h.vertex.as_str())).collect();
        let edges: Vec<(&str, &str)> = self.involution.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let labels: Vec<(&str, &str)> = self.labels.iter().map(|l| (l.label.as_str(), l.flag.as_str())).collect();
        let vertex_set = FinSet::new(self.vertices.iter().map(|v| Atom::new(v)));
        GlobalLabeledGraph::build_with_vertices(vertex_set, &attach, &edges, &labels)
            .map_err(|e| schema(at, e.to_string()))
    }

    pub fn to_graph(&self) -> Result<GlobalLabeledGraph, ParseError> {
        self.to_graph_at("")
    }

    /// The canonical file of a graph: everything listed in atom order.
    pub fn from_graph(g: &GlobalLabeledGraph) -> GraphFile {
        let gv = &g.graph;
        GraphFile {
            vertices: gv.vertices.iter().map(ToString::to_string).collect(),
            flags: gv
                .flags
                .iter()
                .map(|h| FlagEntry { id: h.to_string(), vertex: gv.vertex(h).expect("flag has a vertex").to_string() })
                .collect(),
            involution: gv.edges().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            labels: g
                .leg_injection
                .pairs()
                .map(|(l, h)| LabelEntry { label: l.to_string(), flag: h.to_string() })
                .collect(),
        }
    }
}

fn map_at(
    at: String,
    entries: &BTreeMap<String, String>,
    domain: &FinSet,
    codomain: &FinSet,
) -> Result<SetMap, ParseError> {
    let mut pairs = Vec::new();
    for (k, v) in entries {
        let (a, b) = (Atom::new(k), Atom::new(v));
        let here = format!("{at}/{}", escape(k));
        if !domain.contains(&a) {
            return Err(schema(here, format!("{k:?} is not in the domain {domain}")));
        }
        if !codomain.contains(&b) {
            return Err(schema(here, format!("{v:?} is not in the codomain {codomain}")));
        }
        pairs.push((a, b));
    }
    if let Some(missing) = domain.iter().find(|a| !entries.keys().any(|k| Atom::new(k) == **a)) {
        return Err(schema(at, format!("no image for {missing}")));
    }
    SetMap::from_pairs(domain.clone(), codomain.clone(), pairs).map_err(|e| schema(at, e.to_string()))
}

impl MorphismFile {
    pub fn to_morphism_at(&self, at: &str) -> Result<GraphMor, ParseError> {
        let source = Arc::new(self.source.to_graph_at(&format!("{at}/source"))?);
        let target = Arc::new(self.target.to_graph_at(&format!("{at}/target"))?);
        let flag_map = map_at(format!("{at}/flag_map"), &self.flag_map, target.flags(), source.flags())?;
        let vertex_map = map_at(format!("{at}/vertex_map"), &self.vertex_map, source.vertices(), target.vertices())?;
        let m = GraphMor { source, target, flag_map, vertex_map };
        let report = validate_graph_morphism(&m);
        if report.passed() {
            Ok(m)
        } else {
            Err(ParseError::Invalid(Box::new(report)))
        }
    }

    pub fn to_morphism(&self) -> Result<GraphMor, ParseError> {
        self.to_morphism_at("")
    }

    pub fn from_morphism(m: &GraphMor) -> MorphismFile {
        let render = |map: &SetMap| map.pairs().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        MorphismFile {
            source: GraphFile::from_graph(&m.source),
            target: GraphFile::from_graph(&m.target),
            flag_map: render(&m.flag_map),
            vertex_map: render(&m.vertex_map),
        }
    }
}

/// Reads a graph from JSON text.
pub fn parse_graph_file(text: &str) -> Result<GlobalLabeledGraph, ParseError> {
    from_json::<GraphFile>(text)?.to_graph()
}

/// Reads a morphism from JSON text.
pub fn parse_morphism_file(text: &str) -> Result<GraphMor, ParseError> {
    from_json::<MorphismFile>(text)?.to_morphism()
}
