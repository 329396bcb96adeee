//! Bounded enumeration of graphs up to renaming of vertices and edge flags,
//! and of all morphisms between two graphs.

use std::sync::Arc;

use itertools::Itertools;

use super::{GlobalLabeledGraph, Graph, GraphMor, GraphV};
use crate::finset::{Atom, FinSet, SetMap};
use crate::opcat::Mode;

/// Limits for the enumeration: label sets are subsets of `labels` of size at
/// most `max_labels`, graphs have at most `max_vertices` vertices and
/// `max_flags` flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphBound {
    pub labels: FinSet,
    pub max_labels: usize,
    pub max_vertices: usize,
    pub max_flags: usize,
}

impl GraphBound {
    pub fn new(labels: FinSet, max_vertices: usize, max_flags: usize) -> GraphBound {
        GraphBound { max_labels: labels.len(), labels, max_vertices, max_flags }
    }

    pub fn label_sets(&self) -> Vec<FinSet> {
        self.labels.subsets().into_iter().filter(|x| x.len() <= self.max_labels).collect()
    }
}

/// Vertex names: ordinals in thin mode; in thick mode `1` for a single vertex
/// (the hub of a corolla) and letters from `p` on otherwise.
pub fn vertex_pool(mode: Mode, k: usize) -> FinSet {
    match (mode, k) {
        (Mode::Thin, _) | (Mode::Thick, 1) => FinSet::ordinal(k),
        (Mode::Thick, _) => FinSet::new((0..k).map(|i| Atom::new(&((b'p' + i as u8) as char).to_string()))),
    }
}

pub fn edge_flags(i: usize) -> (Atom, Atom) {
    (Atom::new(&format!("e{i}a")), Atom::new(&format!("e{i}b")))
}

/// The graph with legs `labels` at `legs[i]` and one edge per `(u, v)` in
/// `edges` (vertex indices into `pool`, `u ≤ v`); edge `i` has flags `e{i}a`
/// at `u` and `e{i}b` at `v`.
fn assemble(labels: &FinSet, pool: &FinSet, legs: &[usize], edges: &[(usize, usize)]) -> GlobalLabeledGraph {
    let v = |i: usize| pool.atoms()[i].clone();
    let mut attach: Vec<(Atom, Atom)> = labels.iter().cloned().zip(legs.iter().map(|&i| v(i))).collect();
    let mut inv: Vec<(Atom, Atom)> = labels.iter().map(|l| (l.clone(), l.clone())).collect();
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (x, y) = edge_flags(i + 1);
        attach.push((x.clone(), v(a)));
        attach.push((y.clone(), v(b)));
        inv.push((x.clone(), y.clone()));
        inv.push((y, x));
    }
    let flags = FinSet::new(attach.iter().map(|(h, _)| h.clone()));
    let vertex_of = SetMap::from_pairs(flags.clone(), pool.clone(), attach).expect("flags at vertices");
    let involution = SetMap::from_pairs(flags.clone(), flags.clone(), inv).expect("involution");
    GlobalLabeledGraph {
        graph: GraphV { vertices: pool.clone(), flags: flags.clone(), vertex_of, involution },
        labels: labels.clone(),
        leg_injection: SetMap::from_fn(labels.clone(), flags, Atom::clone).expect("legs are flags"),
    }
}

type Shape = (Vec<usize>, Vec<(usize, usize)>);

fn canonical_shape(k: usize, legs: &[usize], edges: &[(usize, usize)]) -> Shape {
    (0..k)
        .permutations(k)
        .map(|p| {
            let l: Vec<usize> = legs.iter().map(|&i| p[i]).collect();
            let mut e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
            e.sort();
            (l, e)
        })
        .min()
        .expect("k ≥ 1")
}

/// One representative per isomorphism class (fixing labels) of graphs with
/// global labels `labels`, `k` vertices and `e` edges.
pub fn graphs_with(mode: Mode, labels: &FinSet, k: usize, e: usize) -> Vec<GlobalLabeledGraph> {
    let pool = vertex_pool(mode, k);
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect();
    let mut shapes: Vec<Shape> = Vec::new();
    let leg_choices = (0..labels.len()).map(|_| 0..k).multi_cartesian_product();
    let leg_choices: Vec<Vec<usize>> = if labels.is_empty() { vec![Vec::new()] } else { leg_choices.collect() };
    for legs in &leg_choices {
        for edges in slots.iter().copied().combinations_with_replacement(e) {
            shapes.push(canonical_shape(k, legs, &edges));
        }
    }
    shapes.sort();
    shapes.dedup();
    shapes.into_iter().map(|(legs, edges)| assemble(labels, &pool, &legs, &edges)).collect()
}

pub fn enumerate_graphs(mode: Mode, bound: &GraphBound) -> Vec<Graph> {
    let mut out = Vec::new();
    for labels in bound.label_sets() {
        for k in 1..=bound.max_vertices {
            let mut e = 0;
            while labels.len() + 2 * e <= bound.max_flags {
                out.extend(graphs_with(mode, &labels, k, e).into_iter().map(Arc::new));
                e += 1;
            }
        }
    }
    out
}

/// Every morphism `s → t`. Both graphs must label their legs by themselves
/// (`ψ` is then forced on legs).
pub fn graph_hom(s: &Graph, t: &Graph) -> Vec<GraphMor> {
    if s.labels != t.labels {
        return Vec::new();
    }
    let (sg, tg) = (&s.graph, &t.graph);
    let s_edges = sg.edges();
    let t_edges = tg.edges();
    if t_edges.len() > s_edges.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let tv = tg.vertices.atoms();
    let sv = sg.vertices.atoms();
    for images in (0..sv.len()).map(|_| 0..tv.len()).multi_cartesian_product() {
        if !(0..tv.len()).all(|j| images.contains(&j)) {
            continue;
        }
        let phi =
            SetMap::new(sg.vertices.clone(), tg.vertices.clone(), images.iter().map(|&j| tv[j].clone()).collect())
                .expect("vertex map");
        let over = |h: &Atom| phi.apply(sg.vertex(h).expect("flag")).expect("vertex").clone();
        let legs_ok = s.leg_injection.pairs().all(|(l, h)| {
            let th = t.leg_injection.get(l).expect("same labels");
            over(h) == *tg.vertex(th).expect("flag")
        });
        if !legs_ok {
            continue;
        }
        let mut used = vec![false; s_edges.len()];
        let mut chosen: Vec<(usize, bool)> = Vec::with_capacity(t_edges.len());
        match_edges(s, t, &phi, &s_edges, &t_edges, &mut used, &mut chosen, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn match_edges(
    s: &Graph,
    t: &Graph,
    phi: &SetMap,
    s_edges: &[(Atom, Atom)],
    t_edges: &[(Atom, Atom)],
    used: &mut Vec<bool>,
    chosen: &mut Vec<(usize, bool)>,
    out: &mut Vec<GraphMor>,
) {
    let (sg, tg) = (&s.graph, &t.graph);
    let over = |h: &Atom| phi.apply(sg.vertex(h).expect("flag")).expect("vertex").clone();
    if chosen.len() == t_edges.len() {
        let separated = s_edges.iter().enumerate().any(|(i, (x, y))| !used[i] && over(x) != over(y));
        if separated {
            return;
        }
        let mut pairs: Vec<(Atom, Atom)> =
            s.leg_injection.pairs().map(|(l, h)| (t.leg_injection.get(l).expect("label").clone(), h.clone())).collect();
        for (&(i, flip), (x, y)) in chosen.iter().zip(t_edges) {
            let (a, b) = &s_edges[i];
            let (a, b) = if flip { (b, a) } else { (a, b) };
            pairs.push((x.clone(), a.clone()));
            pairs.push((y.clone(), b.clone()));
        }
        let flag_map = SetMap::from_pairs(tg.flags.clone(), sg.flags.clone(), pairs).expect("flag map");
        out.push(GraphMor { source: s.clone(), target: t.clone(), flag_map, vertex_map: phi.clone() });
        return;
    }
    let (x, y) = &t_edges[chosen.len()];
    let (vx, vy) = (tg.vertex(x).expect("flag"), tg.vertex(y).expect("flag"));
    for i in 0..s_edges.len() {
        if used[i] {
            continue;
        }
        let (a, b) = &s_edges[i];
        for flip in [false, true] {
            let (a, b) = if flip { (b, a) } else { (a, b) };
            if over(a) == *vx && over(b) == *vy {
                used[i] = true;
                chosen.push((i, flip));
                match_edges(s, t, phi, s_edges, t_edges, used, chosen, out);
                chosen.pop();
                used[i] = false;
            }
        }
    }
}
