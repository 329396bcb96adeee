//! Graphs as flags over vertices with an involution, globally labelled graphs,
//! and their morphisms: contravariant injective flag maps with surjective
//! vertex maps.

mod category;
mod enumerate;

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::finset::{canonical_order_iso, sorting_sign, Atom, FinSet, SetMap, Sign};
use crate::opcat::Mode;
use crate::report::{AxiomReport, Check, Witness};

pub use category::{parse_label_set, GrCategory};
pub use enumerate::GraphBound;

/// A graph: flags attached to a nonempty vertex set, and an involution on flags.
/// Fixed points are legs; two-element orbits are edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphV {
    pub vertices: FinSet,
    pub flags: FinSet,
    pub vertex_of: SetMap,
    pub involution: SetMap,
}

impl GraphV {
    pub fn legs(&self) -> FinSet {
        self.flags.filter(|h| self.involution.get(h) == Some(h))
    }

    /// Edges as `(min flag, max flag)`, sorted by the smaller flag.
    pub fn edges(&self) -> Vec<(Atom, Atom)> {
        self.involution.pairs().filter(|(h, k)| h < k).map(|(h, k)| (h.clone(), k.clone())).collect()
    }

    pub fn flags_at(&self, v: &Atom) -> FinSet {
        self.vertex_of.preimage(v)
    }

    pub fn partner(&self, h: &Atom) -> Option<&Atom> {
        self.involution.get(h)
    }

    pub fn vertex(&self, h: &Atom) -> Option<&Atom> {
        self.vertex_of.get(h)
    }
}

/// Checks that the vertex set is nonempty, every flag sits at a vertex and the
/// involution squares to the identity.
pub fn validate_graph(g: &GraphV) -> AxiomReport {
    let mut report = AxiomReport::new("graph", "input");
    let mut nonempty = Check::new("vertices-nonempty");
    nonempty.record(!g.vertices.is_empty(), || Witness::new().with("vertices", &g.vertices));
    let mut attach = Check::new("vertex-map");
    attach.record(g.vertex_of.domain() == &g.flags && g.vertex_of.codomain() == &g.vertices, || {
        Witness::new().with("vertex_of", format!("{:?}", g.vertex_of))
    });
    let mut inv = Check::new("involution");
    let typed = g.involution.domain() == &g.flags && g.involution.codomain() == &g.flags;
    inv.record(typed, || Witness::new().with("involution", format!("{:?}", g.involution)));
    if typed {
        for (h, k) in g.involution.pairs() {
            let back = g.involution.get(k);
            inv.record(back == Some(h), || {
                Witness::new()
                    .with("flag", h)
                    .with("σ(flag)", k)
                    .with("σσ(flag)", back.map_or("-".into(), Atom::to_string))
            });
        }
    }
    for c in [nonempty, attach, inv] {
        report.push(c.finish());
    }
    report
}

/// A graph with global labels: an injection `labels → flags` onto the legs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlobalLabeledGraph {
    pub graph: GraphV,
    pub labels: FinSet,
    pub leg_injection: SetMap,
}

pub type Graph = Arc<GlobalLabeledGraph>;

impl GlobalLabeledGraph {
    pub fn new(graph: GraphV, labels: FinSet, leg_injection: SetMap) -> Result<GlobalLabeledGraph> {
        let g = GlobalLabeledGraph { graph, labels, leg_injection };
        let report = g.validate();
        match report.first_failure() {
            None => Ok(g),
            Some(e) => Err(Error::Construction(format!(
                "{}: {}",
                e.item,
                e.witness.as_ref().map(ToString::to_string).unwrap_or_default()
            ))),
        }
    }

    /// Builds a graph from vertex assignments, edges and labels
    /// (`label → flag`); flags not named in an edge are legs.
    pub fn build(
        attach: &[(&str, &str)],
        edges: &[(&str, &str)],
        labels: &[(&str, &str)],
    ) -> Result<GlobalLabeledGraph> {
        let vertices = FinSet::new(attach.iter().map(|(_, v)| Atom::new(v)));
        Self::build_with_vertices(vertices, attach, edges, labels)
    }

    pub fn build_with_vertices(
        vertices: FinSet,
        attach: &[(&str, &str)],
        edges: &[(&str, &str)],
        labels: &[(&str, &str)],
    ) -> Result<GlobalLabeledGraph> {
        let flags = FinSet::new(attach.iter().map(|(h, _)| Atom::new(h)));
        let vertex_of = SetMap::from_pairs(
            flags.clone(),
            vertices.clone(),
            attach.iter().map(|(h, v)| (Atom::new(h), Atom::new(v))),
        )?;
        let mut inv: Vec<(Atom, Atom)> = Vec::new();
        for (x, y) in edges {
            inv.push((Atom::new(x), Atom::new(y)));
            inv.push((Atom::new(y), Atom::new(x)));
        }
        let paired = FinSet::new(inv.iter().map(|(x, _)| x.clone()));
        inv.extend(flags.difference(&paired).iter().map(|h| (h.clone(), h.clone())));
        let involution = SetMap::from_pairs(flags.clone(), flags.clone(), inv)?;
        let label_set = FinSet::new(labels.iter().map(|(l, _)| Atom::new(l)));
        let leg_injection =
            SetMap::from_pairs(label_set.clone(), flags, labels.iter().map(|(l, h)| (Atom::new(l), Atom::new(h))))?;
        GlobalLabeledGraph::new(
            GraphV { vertices, flags: vertex_of.domain().clone(), vertex_of, involution },
            label_set,
            leg_injection,
        )
    }

    pub fn validate(&self) -> AxiomReport {
        let mut report = validate_graph(&self.graph);
        let mut labels = Check::new("labels");
        let inj = &self.leg_injection;
        let typed = inj.domain() == &self.labels && inj.codomain() == &self.graph.flags;
        labels.record(typed && inj.is_injective() && inj.image() == self.graph.legs(), || {
            Witness::new().with("labels", format!("{inj:?}")).with("legs", self.graph.legs())
        });
        report.push(labels.finish());
        report
    }

    pub fn vertices(&self) -> &FinSet {
        &self.graph.vertices
    }

    pub fn flags(&self) -> &FinSet {
        &self.graph.flags
    }

    pub fn edges(&self) -> Vec<(Atom, Atom)> {
        self.graph.edges()
    }

    /// The same graph with vertices renamed along a bijection.
    pub fn rename_vertices(&self, sigma: &SetMap) -> Result<GlobalLabeledGraph> {
        if sigma.domain() != self.vertices() || !sigma.is_bijective() {
            return Err(Error::domain(format!("{sigma} is not a bijection out of {}", self.vertices())));
        }
        let graph = GraphV {
            vertices: sigma.codomain().clone(),
            flags: self.graph.flags.clone(),
            vertex_of: sigma.compose(&self.graph.vertex_of)?,
            involution: self.graph.involution.clone(),
        };
        Ok(GlobalLabeledGraph { graph, labels: self.labels.clone(), leg_injection: self.leg_injection.clone() })
    }
}

impl fmt::Display for GlobalLabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.graph;
        let verts = g.vertices.iter().map(|v| format!("{v}:{}", g.flags_at(v).iter().join(" "))).join("; ");
        let edges = g.edges().iter().map(|(x, y)| format!("{x}~{y}")).join(" ");
        let labels =
            self.leg_injection.pairs().map(|(l, h)| if l == h { l.to_string() } else { format!("{l}→{h}") }).join(" ");
        write!(f, "⟨{verts} | {edges} | {labels}⟩")
    }
}

/// `Φ: source → target` given by an injective flag map `target flags → source flags`
/// and a surjective vertex map `source vertices → target vertices`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphMor {
    pub source: Graph,
    pub target: Graph,
    pub flag_map: SetMap,
    pub vertex_map: SetMap,
}

impl fmt::Display for GraphMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {} ψ={} φ={}", self.source, self.target, self.flag_map, self.vertex_map)
    }
}

/// Checks the morphism conditions: types, injectivity and surjectivity, the
/// commuting square, equivariance, bijectivity on legs, the edge condition
/// and that global labels are fixed.
pub fn validate_graph_morphism(m: &GraphMor) -> AxiomReport {
    let mut report = AxiomReport::new("graph-morphism", "input");
    let (s, t) = (&m.source.graph, &m.target.graph);
    let (psi, phi) = (&m.flag_map, &m.vertex_map);
    let mut typed = Check::new("maps");
    typed.record(
        psi.domain() == &t.flags
            && psi.codomain() == &s.flags
            && phi.domain() == &s.vertices
            && phi.codomain() == &t.vertices
            && psi.is_injective()
            && phi.is_surjective(),
        || Witness::new().with("flag_map", format!("{psi:?}")).with("vertex_map", format!("{phi:?}")),
    );
    if typed.failures() > 0 {
        report.push(typed.finish());
        return report;
    }
    let mut square = Check::new("square-commutes");
    let mut equiv = Check::new("equivariant");
    for h in t.flags.iter() {
        let k = psi.apply(h).expect("typed");
        let down = phi.apply(s.vertex(k).expect("typed")).expect("typed");
        square.record(Some(down) == t.vertex(h), || Witness::new().with("flag", h));
        let a = psi.get(t.partner(h).expect("typed"));
        let b = s.partner(k);
        equiv.record(a == b, || Witness::new().with("flag", h));
    }
    let mut legs = Check::new("legs-bijective");
    let image_legs = FinSet::new(t.legs().iter().filter_map(|h| psi.get(h).cloned()));
    legs.record(image_legs == s.legs(), || Witness::new().with("target legs", t.legs()).with("source legs", s.legs()));
    let mut edge = Check::new("edge-condition");
    let image = psi.image();
    for (x, y) in s.edges() {
        let (vx, vy) = (
            phi.apply(s.vertex(&x).expect("typed")).expect("typed"),
            phi.apply(s.vertex(&y).expect("typed")).expect("typed"),
        );
        edge.record(vx == vy || (image.contains(&x) && image.contains(&y)), || {
            Witness::new().with("edge", format!("{x}~{y}"))
        });
    }
    let mut labels = Check::new("labels-fixed");
    let fixed = m.source.labels == m.target.labels
        && psi.compose(&m.target.leg_injection).ok().as_ref() == Some(&m.source.leg_injection);
    labels.record(fixed, || {
        Witness::new().with("source labels", &m.source.labels).with("target labels", &m.target.labels)
    });
    for c in [typed, square, equiv, legs, edge, labels] {
        report.push(c.finish());
    }
    report
}

/// The fiber of `Φ` over a target vertex. In thin mode vertices are renamed
/// onto an ordinal by the order-preserving bijection.
pub fn graph_fiber(m: &GraphMor, x: &Atom, mode: Mode) -> Result<GlobalLabeledGraph> {
    let (s, t) = (&m.source.graph, &m.target.graph);
    if !t.vertices.contains(x) {
        return Err(Error::domain(format!("{x} is not a vertex of {}", m.target)));
    }
    let vertices = m.vertex_map.preimage(x);
    let flags = s.flags.filter(|h| vertices.contains(s.vertex(h).expect("typed")));
    let image = m.flag_map.image();
    let involution = SetMap::from_fn(flags.clone(), flags.clone(), |h| {
        if image.contains(h) {
            h.clone()
        } else {
            s.partner(h).expect("typed").clone()
        }
    })?;
    let vertex_of = s.vertex_of.restrict(&flags, &vertices)?;
    let labels = t.flags_at(x);
    let leg_injection = m.flag_map.restrict(&labels, &flags)?;
    let fiber = GlobalLabeledGraph {
        graph: GraphV { vertices: vertices.clone(), flags, vertex_of, involution },
        labels,
        leg_injection,
    };
    match mode {
        Mode::Thick => Ok(fiber),
        Mode::Thin => fiber.rename_vertices(&canonical_order_iso(&vertices)),
    }
}

/// One vertex `hub` carrying the legs `labels`, labelled by themselves.
pub fn corolla(labels: &FinSet, hub: &Atom) -> GlobalLabeledGraph {
    let vertices = FinSet::singleton(hub.clone());
    let vertex_of = SetMap::from_fn(labels.clone(), vertices.clone(), |_| hub.clone()).expect("hub");
    GlobalLabeledGraph {
        graph: GraphV { vertices, flags: labels.clone(), vertex_of, involution: SetMap::identity(labels) },
        labels: labels.clone(),
        leg_injection: SetMap::identity(labels),
    }
}

/// The lift of a bijection of vertices: same flags and involution, vertices
/// renamed, with identity flag map and `σ` as vertex map.
pub fn gr_lift(sigma: &SetMap, g: &Graph) -> Result<GraphMor> {
    let target = Arc::new(g.rename_vertices(sigma)?);
    Ok(GraphMor { source: g.clone(), target, flag_map: SetMap::identity(g.flags()), vertex_map: sigma.clone() })
}

/// The unique morphism onto the corolla of the labels with hub `hub`.
pub fn to_corolla(g: &Graph, hub: &Atom) -> GraphMor {
    let target = Arc::new(corolla(&g.labels, hub));
    let flag_map = g.leg_injection.clone();
    let vertex_map = SetMap::from_fn(g.vertices().clone(), target.vertices().clone(), |_| hub.clone()).expect("hub");
    GraphMor { source: g.clone(), target, flag_map, vertex_map }
}

/// Contracts the edges containing the given flags. Merged vertices are named
/// by their smallest member (thick) or renumbered in order (thin).
pub fn build_edge_contraction(g: &Graph, edge_flags: &[Atom], mode: Mode) -> Result<GraphMor> {
    let gv = &g.graph;
    let mut contracted = FinSet::empty();
    for h in edge_flags {
        let k = gv.partner(h).ok_or_else(|| Error::Construction(format!("{h} is not a flag of {g}")))?;
        if k == h {
            return Err(Error::Construction(format!("{h} is a leg, not half of an edge")));
        }
        contracted = contracted.union(&FinSet::new([h.clone(), k.clone()]));
    }
    let verts = gv.vertices.atoms().to_vec();
    let mut class: Vec<usize> = (0..verts.len()).collect();
    fn root(c: &mut [usize], mut i: usize) -> usize {
        while c[i] != i {
            i = c[i];
        }
        i
    }
    for (x, y) in gv.edges() {
        if contracted.contains(&x) {
            let i = gv.vertices.position(gv.vertex(&x).expect("typed")).expect("vertex");
            let j = gv.vertices.position(gv.vertex(&y).expect("typed")).expect("vertex");
            let (a, b) = (root(&mut class, i), root(&mut class, j));
            class[a.max(b)] = a.min(b);
        }
    }
    let names: Vec<Atom> = (0..verts.len()).map(|i| verts[root(&mut class, i)].clone()).collect();
    let mut targets = FinSet::new(names.iter().cloned());
    let mut quotient = SetMap::new(gv.vertices.clone(), targets.clone(), names)?;
    if mode == Mode::Thin {
        let can = canonical_order_iso(&targets);
        quotient = can.compose(&quotient)?;
        targets = can.codomain().clone();
    }
    let flags = gv.flags.difference(&contracted);
    let graph = GraphV {
        vertices: targets,
        flags: flags.clone(),
        vertex_of: quotient.compose(&gv.vertex_of.restrict(&flags, &gv.vertices)?)?,
        involution: gv.involution.restrict(&flags, &flags)?,
    };
    let leg_injection = g.leg_injection.restrict(&g.labels, &flags)?;
    let target = Arc::new(GlobalLabeledGraph::new(graph, g.labels.clone(), leg_injection)?);
    let flag_map = SetMap::from_fn(flags.clone(), gv.flags.clone(), Atom::clone)?;
    Ok(GraphMor { source: g.clone(), target, flag_map, vertex_map: quotient })
}

/// Edges of the fiber over `x`: source edges not in the image of the flag map,
/// at vertices over `x`.
pub fn fiber_edges(m: &GraphMor, x: &Atom) -> Vec<(Atom, Atom)> {
    let s = &m.source.graph;
    let image = m.flag_map.image();
    s.edges()
        .into_iter()
        .filter(|(h, _)| !image.contains(h) && m.vertex_map.get(s.vertex(h).expect("typed")) == Some(x))
        .collect()
}

/// The sign of the shuffle taking the target's edges (carried along the flag
/// map, in target order) followed by each fiber's edges (fibers in vertex
/// order) to the source's edge order.
pub fn mu_sign(m: &GraphMor) -> Sign {
    let source_edges = m.source.edges();
    let rank = |h: &Atom| source_edges.iter().position(|(x, y)| x == h || y == h).expect("edge of the source");
    let mut word: Vec<usize> = m.target.edges().iter().map(|(x, _)| rank(m.flag_map.get(x).expect("typed"))).collect();
    for v in m.target.vertices().iter() {
        word.extend(fiber_edges(m, v).iter().map(|(x, _)| rank(x)));
    }
    sorting_sign(&word)
}
