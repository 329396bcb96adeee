use std::sync::Arc;

use opcat::finset::{Atom, FinSet, SetMap, Sign};
use opcat::fixtures::gr_bound;
use opcat::graphs::*;
use opcat::opcat::{Enumeration, Mode, OperadicCategory};

fn a(s: &str) -> Atom {
    Atom::new(s)
}

fn set(labels: &[&str]) -> FinSet {
    FinSet::from_labels(labels)
}

/// `p --x~y-- q` with legs `a` at `p` and `b` at `q`.
fn gamma() -> Graph {
    Arc::new(
        GlobalLabeledGraph::build(
            &[("a", "p"), ("x", "p"), ("y", "q"), ("b", "q")],
            &[("x", "y")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap(),
    )
}

fn tadpole() -> Graph {
    Arc::new(GlobalLabeledGraph::build(&[("a", "v"), ("b", "v"), ("l", "v")], &[("a", "b")], &[("l", "l")]).unwrap())
}

/// The chain `p --e1-- q --e2-- r` with legs `a` at `p` and `b` at `r`.
fn chain() -> Graph {
    Arc::new(
        GlobalLabeledGraph::build(
            &[("a", "p"), ("e1a", "p"), ("e1b", "q"), ("e2a", "q"), ("e2b", "r"), ("b", "r")],
            &[("e1a", "e1b"), ("e2a", "e2b")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap(),
    )
}

fn gr(mode: Mode, v: usize) -> GrCategory {
    GrCategory::new(mode, gr_bound(v))
}

#[test]
fn corollas_and_tadpoles_are_valid() {
    let star = corolla(&set(&["a", "b", "c", "d"]), &Atom::num(1));
    assert!(star.validate().passed());
    assert_eq!(star.graph.legs().len(), 4);
    assert!(star.edges().is_empty());
    let bald = corolla(&FinSet::empty(), &Atom::num(1));
    assert!(bald.validate().passed());
    assert_eq!(bald.vertices().len(), 1);
    assert!(bald.flags().is_empty());

    let t = tadpole();
    assert_eq!(t.edges(), vec![(a("a"), a("b"))]);
    assert_eq!(t.graph.legs(), set(&["l"]));
}

#[test]
fn three_cycle_is_not_an_involution() {
    let flags = set(&["x", "y", "z"]);
    let v = set(&["v"]);
    let g = GraphV {
        vertices: v.clone(),
        flags: flags.clone(),
        vertex_of: SetMap::from_fn(flags.clone(), v, |_| a("v")).unwrap(),
        involution: SetMap::table(&[("x", "y"), ("y", "z"), ("z", "x")], &["x", "y", "z"]).unwrap(),
    };
    let r = validate_graph(&g);
    assert!(!r.holds("involution"));
    assert!(r.holds("vertices-nonempty"));
}

#[test]
fn morphism_validation() {
    let g = gamma();
    let onto = to_corolla(&g, &a("w"));
    assert!(validate_graph_morphism(&onto).passed());
    let id = gr(Mode::Thick, 2).identity(&g);
    assert!(validate_graph_morphism(&id).passed());

    // Two bare vertices: the edge x~y is separated but nothing covers it.
    let apart = Arc::new(GlobalLabeledGraph::build(&[("a", "p"), ("b", "q")], &[], &[("a", "a"), ("b", "b")]).unwrap());
    let bad = GraphMor {
        source: g.clone(),
        target: apart,
        flag_map: SetMap::table(&[("a", "a"), ("b", "b")], &["a", "b", "x", "y"]).unwrap(),
        vertex_map: SetMap::identity(&set(&["p", "q"])),
    };
    let r = validate_graph_morphism(&bad);
    assert!(!r.holds("edge-condition"));
    assert_eq!(r.entry("edge-condition").unwrap().witness.as_ref().unwrap().get("edge"), Some("x~y"));
}

#[test]
fn fiber_of_the_contraction_onto_a_corolla() {
    let g = gamma();
    let f = graph_fiber(&to_corolla(&g, &a("w")), &a("w"), Mode::Thick).unwrap();
    assert_eq!(f.vertices(), &set(&["p", "q"]));
    assert_eq!(f.flags(), &set(&["a", "b", "x", "y"]));
    assert_eq!(f.edges(), vec![(a("x"), a("y"))]);
    assert_eq!(f.labels, set(&["a", "b"]));
    assert!(graph_fiber(&to_corolla(&g, &a("w")), &a("zz"), Mode::Thick).is_err());
}

#[test]
fn identity_fibers_are_local_corollas() {
    let g = gamma();
    let id = gr(Mode::Thick, 2).identity(&g);
    let fp = graph_fiber(&id, &a("p"), Mode::Thick).unwrap();
    assert_eq!(fp, corolla(&set(&["a", "x"]), &a("p")));
}

#[test]
fn single_vertex_fiber_is_the_source_with_target_labels() {
    let t = tadpole();
    let m = to_corolla(&t, &a("w"));
    let f = graph_fiber(&m, &a("w"), Mode::Thick).unwrap();
    assert_eq!(f.graph, t.graph);
    assert_eq!(&f.labels, m.target.flags());
}

/// The fiber by its definition, written out independently.
fn fiber_oracle(m: &GraphMor, x: &Atom) -> (FinSet, FinSet, Vec<(Atom, Atom)>, FinSet) {
    let s = &m.source.graph;
    let verts = FinSet::new(s.vertices.iter().filter(|v| m.vertex_map.apply(v).unwrap() == x).cloned());
    let flags = FinSet::new(s.flags.iter().filter(|h| verts.contains(s.vertex(h).unwrap())).cloned());
    let kept = m.flag_map.image();
    let mut edges: Vec<(Atom, Atom)> = flags
        .iter()
        .filter(|h| !kept.contains(h))
        .map(|h| (h.clone(), s.partner(h).unwrap().clone()))
        .filter(|(h, k)| h < k)
        .collect();
    edges.sort();
    let labels = FinSet::new(m.target.graph.flags.iter().filter(|h| m.target.graph.vertex(h) == Some(x)).cloned());
    (verts, flags, edges, labels)
}

#[test]
fn fibers_match_the_definition_on_all_enumerated_morphisms() {
    let c = gr(Mode::Thick, 3);
    let en = Enumeration::new(&c);
    for (_, _, m) in en.morphisms() {
        for x in m.target.vertices().iter() {
            let f = graph_fiber(m, x, Mode::Thick).unwrap();
            let (v, fl, e, l) = fiber_oracle(m, x);
            assert_eq!((f.vertices(), f.flags(), f.edges(), &f.labels), (&v, &fl, e, &l), "{m} over {x}");
        }
    }
}

#[test]
fn edge_counts_add_up() {
    for mode in [Mode::Thick, Mode::Thin] {
        let c = gr(mode, 3);
        let en = Enumeration::new(&c);
        for (_, _, m) in en.morphisms() {
            let fibers: usize = m.target.vertices().iter().map(|x| c.fiber(m, x).unwrap().edges().len()).sum();
            assert_eq!(m.source.edges().len(), m.target.edges().len() + fibers, "{m}");
        }
    }
}

#[test]
fn corollas_are_terminal_in_their_component() {
    let c = gr(Mode::Thick, 3);
    let objs = c.objects();
    for t in &objs {
        let star = GrCategory::star(&t.labels);
        assert_eq!(c.hom(t, &star).len(), 1, "{t}");
    }
}

#[test]
fn lifts_rename_vertices() {
    let g = gamma();
    let phi = SetMap::table(&[("p", "1"), ("q", "2")], &["1", "2"]).unwrap();
    let l = gr_lift(&phi, &g).unwrap();
    assert_eq!(l.target.vertices(), &FinSet::ordinal(2));
    assert_eq!(l.target.flags(), g.flags());
    assert_eq!(l.target.graph.involution, g.graph.involution);
    assert_eq!(l.target.graph.vertex(&a("y")), Some(&Atom::num(2)));
    assert!(l.flag_map.is_identity());

    let id = gr_lift(&SetMap::identity(g.vertices()), &g).unwrap();
    assert_eq!(id, gr(Mode::Thick, 2).identity(&g));

    // p,q → 1,2 → u,v → s,t: lifting the composite is composing the lifts.
    let c = gr(Mode::Thick, 2);
    let phi2 = SetMap::table(&[("1", "v"), ("2", "u")], &["u", "v"]).unwrap();
    let phi3 = SetMap::table(&[("u", "s"), ("v", "t")], &["s", "t"]).unwrap();
    let l2 = gr_lift(&phi2, &l.target).unwrap();
    let l3 = gr_lift(&phi3, &l2.target).unwrap();
    let all = phi3.compose(&phi2.compose(&phi).unwrap()).unwrap();
    let direct = gr_lift(&all, &g).unwrap();
    assert_eq!(direct, c.compose(&l3, &c.compose(&l2, &l).unwrap()).unwrap());
}

#[test]
fn contractions() {
    let g = gamma();
    let m = build_edge_contraction(&g, &[a("x")], Mode::Thick).unwrap();
    assert_eq!(*m.target, corolla(&set(&["a", "b"]), &a("p")));
    assert!(validate_graph_morphism(&m).passed());

    let t = tadpole();
    let m = build_edge_contraction(&t, &[a("a")], Mode::Thick).unwrap();
    assert_eq!(*m.target, corolla(&set(&["l"]), &a("v")));

    let m = build_edge_contraction(&g, &[], Mode::Thick).unwrap();
    assert!(m.vertex_map.is_bijective());
    assert_eq!(m.target, g);

    assert!(build_edge_contraction(&g, &[a("a")], Mode::Thick).is_err());
    assert!(build_edge_contraction(&g, &[a("nope")], Mode::Thick).is_err());
}

#[test]
fn thin_fibers_are_renumbered_in_order() {
    let g = Arc::new(gamma().rename_vertices(&SetMap::table(&[("p", "1"), ("q", "2")], &["1", "2"]).unwrap()).unwrap());
    let m = build_edge_contraction(&g, &[], Mode::Thin).unwrap();
    let f = graph_fiber(&m, &Atom::num(2), Mode::Thin).unwrap();
    assert_eq!(f.vertices(), &FinSet::ordinal(1));
    let contracted = build_edge_contraction(&g, &[a("x")], Mode::Thin).unwrap();
    assert_eq!(contracted.target.vertices(), &FinSet::ordinal(1));
    let f = graph_fiber(&contracted, &Atom::num(1), Mode::Thin).unwrap();
    assert_eq!(f.vertices(), &FinSet::ordinal(2));
}

#[test]
fn odd_signs_of_single_contractions() {
    let c = chain();
    let only_e2 = build_edge_contraction(&c, &[a("e2a")], Mode::Thick).unwrap();
    assert_eq!(mu_sign(&only_e2), Sign::Plus);
    let only_e1 = build_edge_contraction(&c, &[a("e1a")], Mode::Thick).unwrap();
    assert_eq!(mu_sign(&only_e1), Sign::Minus);
    let none = build_edge_contraction(&c, &[], Mode::Thick).unwrap();
    assert_eq!(mu_sign(&none), Sign::Plus);
    let both = build_edge_contraction(&c, &[a("e1a"), a("e2b")], Mode::Thick).unwrap();
    assert_eq!(mu_sign(&both), Sign::Plus);
}

#[test]
fn gr_passes_the_category_suites() {
    for mode in [Mode::Thick, Mode::Thin] {
        let c = gr(mode, 2);
        assert!(opcat::opcat::check_operadic_axioms(&c).passed());
        assert!(opcat::cleavage::check_cleavage(&c).passed());
        assert!(opcat::opcat::check_unitality(&c).unwrap().passed());
    }
}
