//! The operadic category of graphs over corollas, thick or thin.

use std::sync::Arc;

use super::enumerate::{enumerate_graphs, graph_hom, GraphBound};
use super::{corolla, gr_lift, graph_fiber, Graph, GraphMor};
use crate::error::{Error, Result};
use crate::finset::{canonical_order_iso, Atom, FinSet, SetMap};
use crate::opcat::{ComponentId, Lift, Mode, OperadicCategory};

/// Graphs with global labels; cardinality is the vertex set. In thin mode
/// vertex sets are ordinals and fibers are renumbered in order.
#[derive(Clone, Debug)]
pub struct GrCategory {
    pub mode: Mode,
    pub bound: GraphBound,
}

impl GrCategory {
    pub fn new(mode: Mode, bound: GraphBound) -> GrCategory {
        GrCategory { mode, bound }
    }

    /// The chosen terminal of the component with labels `x`: the corolla with hub `1`.
    pub fn star(x: &FinSet) -> Graph {
        Arc::new(corolla(x, &Atom::num(1)))
    }

    fn hub_iso(&self, vertices: &FinSet) -> Result<SetMap> {
        match self.mode {
            Mode::Thick => Ok(SetMap::identity(vertices)),
            Mode::Thin => Ok(canonical_order_iso(vertices)),
        }
    }
}

/// The label set named by a component id `{a,b}`.
pub fn parse_label_set(c: &str) -> Option<FinSet> {
    let inner = c.strip_prefix('{')?.strip_suffix('}')?;
    Some(FinSet::new(inner.split(',').filter(|l| !l.is_empty()).map(Atom::new)))
}

impl OperadicCategory for GrCategory {
    type Obj = Graph;
    type Mor = GraphMor;

    fn name(&self) -> String {
        match self.mode {
            Mode::Thick => "gr".into(),
            Mode::Thin => "thin-gr".into(),
        }
    }

    fn mode(&self) -> Mode {
        self.mode
    }

    fn objects(&self) -> Vec<Graph> {
        enumerate_graphs(self.mode, &self.bound)
    }

    fn hom(&self, s: &Graph, t: &Graph) -> Vec<GraphMor> {
        graph_hom(s, t)
    }

    fn source(&self, f: &GraphMor) -> Graph {
        f.source.clone()
    }

    fn target(&self, f: &GraphMor) -> Graph {
        f.target.clone()
    }

    fn identity(&self, s: &Graph) -> GraphMor {
        GraphMor {
            source: s.clone(),
            target: s.clone(),
            flag_map: SetMap::identity(s.flags()),
            vertex_map: SetMap::identity(s.vertices()),
        }
    }

    fn compose(&self, g: &GraphMor, f: &GraphMor) -> Result<GraphMor> {
        if f.target != g.source {
            return Err(Error::composition(format!("{} ≠ {}", f.target, g.source)));
        }
        Ok(GraphMor {
            source: f.source.clone(),
            target: g.target.clone(),
            flag_map: f.flag_map.compose(&g.flag_map)?,
            vertex_map: g.vertex_map.compose(&f.vertex_map)?,
        })
    }

    fn cardinality(&self, s: &Graph) -> FinSet {
        s.vertices().clone()
    }

    fn card_map(&self, f: &GraphMor) -> SetMap {
        f.vertex_map.clone()
    }

    fn fiber(&self, f: &GraphMor, x: &Atom) -> Result<Graph> {
        graph_fiber(f, x, self.mode).map(Arc::new)
    }

    fn induced(&self, f: &GraphMor, g: &GraphMor, r: &Atom) -> Result<GraphMor> {
        let h = self.compose(g, f)?;
        let (src, tgt) = (self.fiber(&h, r)?, self.fiber(g, r)?);
        let src_verts = h.vertex_map.preimage(r);
        let tgt_verts = g.vertex_map.preimage(r);
        let thick_phi = f.vertex_map.restrict(&src_verts, &tgt_verts)?;
        let vertex_map =
            self.hub_iso(&tgt_verts)?.compose(&thick_phi)?.compose(&self.hub_iso(&src_verts)?.inverse()?)?;
        let flag_map = f.flag_map.restrict(tgt.flags(), src.flags())?;
        Ok(GraphMor { source: src, target: tgt, flag_map, vertex_map })
    }

    fn lift(&self, sigma: &SetMap, s: &Graph) -> Result<Lift<Graph, GraphMor>> {
        if self.mode == Mode::Thin && !sigma.codomain().is_ordinal() {
            return Err(Error::NoLift(format!("{sigma} does not land in an ordinal")));
        }
        let m = gr_lift(sigma, s)?;
        Ok(Lift { target: m.target.clone(), morphism: m })
    }

    fn component(&self, s: &Graph) -> Option<ComponentId> {
        Some(s.labels.to_string())
    }

    /// Any label set names a component; its terminal is the corolla `⋆_X`.
    fn terminal(&self, c: &ComponentId) -> Option<Graph> {
        Some(Self::star(&parse_label_set(c)?))
    }
}
