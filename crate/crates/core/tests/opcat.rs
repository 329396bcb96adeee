use std::sync::Arc;

use opcat::finset::{all_maps, bijections, induced_on_preimages, Atom, FinSet, SetMap};
use opcat::fixtures::*;
use opcat::graphs::{build_edge_contraction, GlobalLabeledGraph, GrCategory};
use opcat::opcat::*;
use opcat::Error;
use proptest::prelude::*;

fn a(s: &str) -> Atom {
    Atom::new(s)
}

fn bfin(labels: &[&str]) -> BoldFin {
    BoldFin { universe: FinSet::from_labels(labels) }
}

fn gr(mode: Mode, v: usize) -> GrCategory {
    GrCategory::new(mode, gr_bound(v))
}

/// `v -- w` with legs `a` at `v` and `b` at `w`.
fn two_vertex() -> Arc<GlobalLabeledGraph> {
    Arc::new(
        GlobalLabeledGraph::build(
            &[("h1", "v"), ("h2", "w"), ("a", "v"), ("b", "w")],
            &[("h1", "h2")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap(),
    )
}

#[test]
fn bfin_fiber_is_the_preimage() {
    let c = bfin(&["a", "b", "c", "u", "v"]);
    let f = SetMap::table(&[("a", "u"), ("b", "u"), ("c", "v")], &["u", "v"]).unwrap();
    assert_eq!(c.fiber(&f, &a("u")).unwrap(), FinSet::from_labels(&["a", "b"]));
    assert_eq!(c.fiber(&f, &a("v")).unwrap(), FinSet::from_labels(&["c"]));
    assert!(matches!(c.fiber(&f, &a("w")), Err(Error::Domain(_))));
}

#[test]
fn identity_fibers_are_singletons() {
    let c = bfin(&["a", "b", "c"]);
    for s in c.objects() {
        for x in s.iter() {
            assert_eq!(c.cardinality(&c.fiber(&c.identity(&s), x).unwrap()), FinSet::singleton(x.clone()));
        }
    }
    let fin = Fin { max: 3 };
    for s in fin.objects() {
        for x in s.iter() {
            assert_eq!(fin.fiber(&fin.identity(&s), x).unwrap(), FinSet::ordinal(1));
        }
    }
}

#[test]
fn induced_morphisms_in_bfin() {
    let c = bfin(&["a", "b", "c", "u", "v", "w"]);
    let f = SetMap::table(&[("a", "u"), ("b", "u"), ("c", "v")], &["u", "v"]).unwrap();
    let id_t = c.identity(&FinSet::from_labels(&["u", "v"]));
    // Over an identity g, f_r is f restricted to the fiber, onto {r}.
    let fu = c.induced(&f, &id_t, &a("u")).unwrap();
    assert_eq!(fu, SetMap::table(&[("a", "u"), ("b", "u")], &["u"]).unwrap());
    // With f the identity, f_r is the identity of g⁻¹(r).
    let g = SetMap::table(&[("u", "w"), ("v", "w")], &["w"]).unwrap();
    let id_s = c.identity(&FinSet::from_labels(&["u", "v"]));
    assert!(c.induced(&id_s, &g, &a("w")).unwrap().is_identity());
    // Both non-injective: compare elementwise with the restriction oracle.
    let s = FinSet::from_labels(&["a", "b", "c"]);
    let t = FinSet::from_labels(&["u", "v"]);
    let r = FinSet::from_labels(&["w"]);
    for f in all_maps(&s, &t) {
        for g in all_maps(&t, &r) {
            let fr = c.induced(&f, &g, &a("w")).unwrap();
            for x in fr.domain().iter() {
                assert_eq!(fr.apply(x).unwrap(), f.apply(x).unwrap());
            }
            assert_eq!(fr, induced_on_preimages(&f, &g, &a("w")).unwrap());
        }
    }
}

#[test]
fn axioms_hold_on_small_fixtures() {
    for name in [FixtureName::Fin, FixtureName::BoldFin, FixtureName::TerminalOne, FixtureName::SingletonGroupoid] {
        let fx = fixture(name, None, Some(3)).unwrap();
        let report = opcat::with_fixture!(&fx, |c| check_operadic_axioms(c));
        assert!(report.passed(), "{report}");
    }
    let report = check_operadic_axioms(&Omega2 { max_leaves: 3 });
    assert!(report.passed(), "{report}");
    assert!(report.holds("axiom-iii"));
}

#[test]
fn a_broken_fiber_is_reported() {
    /// bfin whose fibers forget their last element.
    #[derive(Clone, Debug)]
    struct Lossy(BoldFin);
    impl OperadicCategory for Lossy {
        type Obj = FinSet;
        type Mor = SetMap;
        fn name(&self) -> String {
            "lossy".into()
        }
        fn mode(&self) -> Mode {
            Mode::Thick
        }
        fn objects(&self) -> Vec<FinSet> {
            self.0.objects()
        }
        fn hom(&self, s: &FinSet, t: &FinSet) -> Vec<SetMap> {
            self.0.hom(s, t)
        }
        fn source(&self, f: &SetMap) -> FinSet {
            self.0.source(f)
        }
        fn target(&self, f: &SetMap) -> FinSet {
            self.0.target(f)
        }
        fn identity(&self, s: &FinSet) -> SetMap {
            self.0.identity(s)
        }
        fn compose(&self, g: &SetMap, f: &SetMap) -> opcat::Result<SetMap> {
            self.0.compose(g, f)
        }
        fn cardinality(&self, s: &FinSet) -> FinSet {
            s.clone()
        }
        fn card_map(&self, f: &SetMap) -> SetMap {
            f.clone()
        }
        fn fiber(&self, f: &SetMap, s: &Atom) -> opcat::Result<FinSet> {
            let full = self.0.fiber(f, s)?;
            Ok(FinSet::new(full.iter().take(full.len().saturating_sub(1)).cloned()))
        }
        fn induced(&self, f: &SetMap, g: &SetMap, r: &Atom) -> opcat::Result<SetMap> {
            self.0.induced(f, g, r)
        }
    }
    let report = check_operadic_axioms(&Lossy(bfin(&["a", "b"])));
    let e = report.entry("fiber-cardinality").unwrap();
    assert!(!e.holds());
    assert!(e.witness.is_some());
}

#[test]
fn unitality_of_bfin_gr_and_fin() {
    let b = check_unitality(&bfin(&["a", "b", "c"])).unwrap();
    assert!(b.holds("right-unital"));
    let strict = b.entry("left-unital-strict").unwrap();
    assert!(strict.failures > 0);
    // The first object whose identity fiber is not {1} itself.
    assert_eq!(strict.witness.as_ref().unwrap().get("fiber"), Some("{a}"));

    for mode in [Mode::Thick, Mode::Thin] {
        let r = check_unitality(&gr(mode, 2)).unwrap();
        assert!(r.holds("left-unital") && r.holds("right-unital"), "{r}");
    }
    let fin = check_unitality(&Fin { max: 3 }).unwrap();
    assert!(fin.holds("left-unital") && fin.holds("right-unital") && fin.holds("left-unital-strict"));
}

#[test]
fn unitality_without_terminals_is_a_config_error() {
    assert!(matches!(check_unitality(&Omega2 { max_leaves: 2 }), Err(Error::Config(_))));
}

#[test]
fn quasibijections() {
    let g = gr(Mode::Thick, 2);
    let en = Enumeration::new(&g);
    assert!(check_quasibijections(&g, &en).passed());
    let fin = Fin { max: 3 };
    for s in fin.objects() {
        assert!(is_quasibijection(&fin, &fin.identity(&s)));
    }
    // Contracting the only edge: the fiber over the merged vertex has two vertices.
    let m = build_edge_contraction(&two_vertex(), &[a("h1")], Mode::Thick).unwrap();
    assert!(!is_quasibijection(&g, &m));
}

#[test]
fn pi0_components() {
    let p = pi0(&gr(Mode::Thick, 2)).unwrap();
    assert_eq!(p.ids(), ["{a,b}", "{a}", "{b}", "{}"]);
    for (id, members) in &p.components {
        for m in members {
            assert_eq!(format!("{}", m.labels), *id);
        }
    }
    // The empty map joins ∅ to every set, and every nonempty set maps onto a singleton.
    let b = pi0(&bfin(&["a", "b", "c"])).unwrap();
    assert_eq!(b.components.len(), 1);
    assert_eq!(b.components.values().next().unwrap().len(), 8);
    assert_eq!(pi0(&TerminalOne).unwrap().components.len(), 1);
}

#[test]
fn sources_and_targets() {
    let fin = Fin { max: 3 };
    let (src, tgt) = source_and_target(&fin, &FinSet::ordinal(1)).unwrap();
    assert_eq!(src, vec![tgt.clone()]);

    let g = gr(Mode::Thick, 2);
    let (src, tgt) = source_and_target(&g, &two_vertex()).unwrap();
    assert_eq!(src, ["{a,h1}", "{b,h2}"]);
    assert_eq!(tgt, "{a,b}");

    // A lift swapping the two vertices swaps the source list.
    let sigma = SetMap::table(&[("v", "w"), ("w", "v")], &["v", "w"]).unwrap();
    let l = g.lift(&sigma, &two_vertex()).unwrap();
    let (moved, _) = source_and_target(&g, &l.target).unwrap();
    assert_eq!(moved, ["{b,h2}", "{a,h1}"]);
}

fn arb_bfin_pair() -> impl Strategy<Value = (SetMap, SetMap)> {
    let set = |n: usize| FinSet::new((0..n).map(|i| Atom::new(&format!("x{i}"))));
    (0..5usize, 1..4usize, 1..3usize).prop_flat_map(move |(s, t, r)| {
        let (s, t, r) = (
            set(s),
            FinSet::new((0..t).map(|i| Atom::new(&format!("y{i}")))),
            FinSet::new((0..r).map(|i| Atom::new(&format!("z{i}")))),
        );
        let (tn, rn) = (t.len(), r.len());
        (proptest::collection::vec(0..tn, s.len()), proptest::collection::vec(0..rn, tn)).prop_map(move |(fi, gi)| {
            let f = SetMap::new(s.clone(), t.clone(), fi.iter().map(|&i| t.atoms()[i].clone()).collect()).unwrap();
            let g = SetMap::new(t.clone(), r.clone(), gi.iter().map(|&i| r.atoms()[i].clone()).collect()).unwrap();
            (f, g)
        })
    })
}

proptest! {
    // Beyond the enumeration bound: the fiber law and axiom (ii) on random bfin triangles.
    #[test]
    fn bfin_fiber_law_and_axiom_ii((f, g) in arb_bfin_pair()) {
        let c = BoldFin { universe: FinSet::empty() };
        for s in f.codomain().iter() {
            prop_assert_eq!(c.cardinality(&c.fiber(&f, s).unwrap()), f.preimage(s));
            let r = g.apply(s).unwrap();
            let fr = c.induced(&f, &g, r).unwrap();
            prop_assert_eq!(c.fiber(&fr, s).unwrap(), c.fiber(&f, s).unwrap());
        }
        let h = c.compose(&g, &f).unwrap();
        let parts = g.codomain().iter().fold(FinSet::empty(), |u, r| u.union(&c.fiber(&h, r).unwrap()));
        prop_assert_eq!(parts, f.domain().clone());
    }

    #[test]
    fn bfin_lifts_compose(n in 0..5usize, i in 0..120usize, j in 0..120usize) {
        let c = BoldFin { universe: FinSet::empty() };
        let s = FinSet::new((0..n).map(|k| Atom::new(&format!("s{k}"))));
        let t = FinSet::new((0..n).map(|k| Atom::new(&format!("t{k}"))));
        let u = FinSet::new((0..n).map(|k| Atom::new(&format!("u{k}"))));
        let b1 = bijections(&s, &t);
        let b2 = bijections(&t, &u);
        let (s1, s2) = (&b1[i % b1.len()], &b2[j % b2.len()]);
        let l1 = c.lift(s1, &s).unwrap();
        let l2 = c.lift(s2, &l1.target).unwrap();
        let l = c.lift(&c.compose(s2, s1).unwrap(), &s).unwrap();
        prop_assert_eq!(l.morphism, c.compose(&l2.morphism, &l1.morphism).unwrap());
    }
}
