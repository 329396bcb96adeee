use opcat::cleavage::*;
use opcat::equivalence::{check_isomorphism, extend_category, restrict_category, IsoMaps};
use opcat::finset::{permutations, Atom, FinSet, SetMap};
use opcat::fixtures::*;
use opcat::graphs::{corolla, GrCategory};
use opcat::opcat::*;
use opcat::Error;

fn a(s: &str) -> Atom {
    Atom::new(s)
}

#[test]
fn bfin_lift_is_sigma() {
    let c = BoldFin { universe: FinSet::from_labels(&["a", "b", "u", "v"]) };
    let s = FinSet::from_labels(&["a", "b"]);
    let sigma = SetMap::table(&[("a", "v"), ("b", "u")], &["u", "v"]).unwrap();
    let l = lift(&c, &sigma, &s).unwrap();
    assert_eq!(l.target, FinSet::from_labels(&["u", "v"]));
    assert_eq!(l.morphism, sigma);
    assert!(lift(&c, &SetMap::identity(&s), &s).unwrap().morphism.is_identity());
}

#[test]
fn omega2_swap_has_no_lift() {
    let (t, sigma) = Omega2::no_lift_witness();
    assert_eq!(t.to_string(), "2-tree 4→2 [1,1,2,2]");
    assert_eq!(render_sigma(&sigma), "(1 2)(3 4)");
    assert!(matches!(lift(&Omega2 { max_leaves: 4 }, &sigma, &t), Err(Error::NoLift(_))));
}

#[test]
fn omega2_search_rediscovers_the_swap() {
    let c = Omega2 { max_leaves: 4 };
    let (t, sigma) = Omega2::no_lift_witness();
    let failing: Vec<SetMap> =
        permutations(&c.cardinality(&t)).into_iter().filter(|p| c.lift(p, &t).is_err()).collect();
    assert!(failing.contains(&sigma));
    // Some permutations of the same tree do lift, e.g. swapping the two pairs.
    assert!(failing.len() < 24);
}

#[test]
fn omega2_cleavage_report_carries_the_witness() {
    let r = check_cleavage(&Omega2 { max_leaves: 3 });
    assert!(!r.passed());
    let w = r.entry("lift-existence").unwrap().witness.as_ref().unwrap();
    assert_eq!(w.get("sigma"), Some("(1 2)(3 4)"));
    assert_eq!(w.get("object"), Some("2-tree 4→2 [1,1,2,2]"));
}

#[test]
fn ordered_delta_fails_on_every_non_monotone_permutation() {
    let c = OrderedDelta { max: 3 };
    for s in c.objects() {
        for p in permutations(&s) {
            let ok = c.lift(&p, &s).is_ok();
            assert_eq!(ok, p.is_monotone(), "{p}");
        }
    }
    let r = check_cleavage(&c);
    assert!(!r.holds("lift-existence"));
    let w = r.entry("lift-existence").unwrap().witness.as_ref().unwrap();
    assert_eq!(w.get("sigma"), Some("(1 2)"));
}

#[test]
fn cloven_fixtures_pass() {
    assert!(check_cleavage(&Fin { max: 3 }).passed());
    assert!(check_cleavage(&BoldFin { universe: letter_universe(3) }).passed());
    for mode in [Mode::Thick, Mode::Thin] {
        let r = check_cleavage(&GrCategory::new(mode, gr_bound(2)));
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn unit_translates() {
    let g = GrCategory::new(Mode::Thick, gr_bound(2));
    let c = "{a,b}".to_string();
    let u = g.terminal(&c).unwrap();
    assert_eq!(unit_translate(&g, &c, &Atom::num(1)).unwrap(), u);
    let ux = unit_translate(&g, &c, &a("x")).unwrap();
    assert_eq!(*ux, corolla(&FinSet::from_labels(&["a", "b"]), &a("x")));
    // Back along {x} → {1}.
    let back = SetMap::table(&[("x", "1")], &["1"]).unwrap();
    assert_eq!(g.lift(&back, &ux).unwrap().target, u);

    let b = BoldFin { universe: letter_universe(2) };
    let one = b.terminal(&ONE_COMPONENT.to_string()).unwrap();
    assert_eq!(unit_translate(&b, &ONE_COMPONENT.to_string(), &a("q")).unwrap(), FinSet::from_labels(&["q"]));
    assert_eq!(unit_translate(&b, &ONE_COMPONENT.to_string(), &Atom::num(1)).unwrap(), one);
}

#[test]
fn lifted_fibers_are_unit_translates() {
    let g = GrCategory::new(Mode::Thick, gr_bound(2));
    for t in g.objects() {
        let card = g.cardinality(&t);
        for sigma in g.lift_tests(&t) {
            let l = g.lift(&sigma, &t).unwrap();
            for x in card.iter() {
                let y = sigma.apply(x).unwrap();
                let fib = g.fiber(&l.morphism, y).unwrap();
                let c = g.component(&fib).unwrap();
                assert_eq!(unit_translate(&g, &c, x).unwrap(), fib);
            }
        }
    }
}

#[test]
fn fixture_names_round_trip() {
    for n in FixtureName::ALL {
        assert_eq!(n.as_str().parse::<FixtureName>().unwrap(), n);
    }
    assert!(matches!("nope".parse::<FixtureName>(), Err(Error::Config(_))));
}

#[test]
fn omega2_is_not_ordered() {
    let c = Omega2 { max_leaves: 4 };
    let f = Omega2::not_ordered_witness();
    assert!(!c.card_map(&f).is_monotone());
}

#[test]
fn terminal_one_extends_to_the_singleton_groupoid() {
    let one = TerminalOne;
    assert_eq!(one.objects().len(), 1);
    assert_eq!(one.cardinality(&one.objects()[0]), FinSet::ordinal(1));
    let universe = letter_universe(3);
    let e = extend_category(one, universe.clone()).unwrap();
    let g = SingletonGroupoid { universe };
    let maps: IsoMaps<'_, _, _> = IsoMaps {
        obj: Box::new(|k: &opcat::equivalence::Corner<Point>| Ok(k.x.clone())),
        mor: Box::new(|m| Ok(e.card_map(m))),
    };
    let r = check_isomorphism(&e, &g, &maps);
    assert!(r.passed(), "{r}");
}

#[test]
fn restricted_bfin_is_fin() {
    let r = restrict_category(BoldFin { universe: letter_universe(3) }).unwrap();
    let fin = Fin { max: 3 };
    let maps: IsoMaps<'_, _, _> =
        IsoMaps { obj: Box::new(|s: &FinSet| Ok(s.clone())), mor: Box::new(|f: &SetMap| Ok(f.clone())) };
    let rep = check_isomorphism(&r, &fin, &maps);
    assert!(rep.passed(), "{rep}");
}
