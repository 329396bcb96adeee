use opcat::equivalence::*;
use opcat::finset::{FinSet, SetMap};
use opcat::fixtures::*;
use opcat::graphs::GrCategory;
use opcat::opcat::*;
use opcat::Error;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn thin_round_trips() {
    let r = roundtrip_thin(&Fin { max: 3 }).unwrap();
    assert!(r.passed(), "{r}");
    let r = roundtrip_thin(&GrCategory::new(Mode::Thin, gr_bound(2))).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn thick_round_trips() {
    let r = roundtrip_thick(&BoldFin { universe: letter_universe(3) }).unwrap();
    assert!(r.passed(), "{r}");
    let r = roundtrip_thick(&SingletonGroupoid { universe: letter_universe(2) }).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn thick_gr_round_trips_up_to_vertex_names() {
    // The enumeration names a lone vertex 1, so corners on other singletons
    // are missed; everything the functors touch is preserved.
    let r = roundtrip_thick(&GrCategory::new(Mode::Thick, gr_bound(2))).unwrap();
    for e in &r.entries {
        if e.item == "objects-bijective" {
            assert!(e.witness.as_ref().unwrap().get("missed").is_some(), "{r}");
        } else {
            assert!(e.holds(), "{r}");
        }
    }
}

#[test]
fn modes_are_enforced() {
    assert!(matches!(
        extend_category(BoldFin { universe: letter_universe(2) }, letter_universe(2)),
        Err(Error::Config(_))
    ));
    assert!(matches!(restrict_category(Fin { max: 2 }), Err(Error::Config(_))));
}

#[test]
fn extension_fibers_do_not_depend_on_the_representative() {
    let e = extend_category(Fin { max: 3 }, letter_universe(3)).unwrap();
    let r = check_fiber_representatives(&e);
    assert!(r.passed(), "{r}");
    assert!(r.entry("representative-independence").unwrap().checked > 0);
    let e = extend_category(GrCategory::new(Mode::Thin, gr_bound(2)), letter_universe(2)).unwrap();
    assert!(check_fiber_representatives(&e).passed());
}

#[test]
fn extension_objects_are_one_per_subset_and_object() {
    let fin = Fin { max: 3 };
    for n in 0..=4 {
        let universe = letter_universe(n);
        let want: usize = (0..=n.min(3)).map(|k| binomial(n, k)).sum();
        let e = extend_category(fin.clone(), universe.clone()).unwrap();
        assert_eq!(e.objects().len(), want, "universe of {n}");
        let s = semi_ordered_extend(fin.clone(), universe).unwrap();
        assert_eq!(s.objects().len(), want, "universe of {n}");
    }
}

#[test]
fn semi_ordered_extension_lifts_only_monotone_bijections() {
    let s = semi_ordered_extend(Fin { max: 2 }, letter_universe(2)).unwrap();
    let corner = s.corner(letter_universe(2), FinSet::ordinal(2)).unwrap();
    let keep = SetMap::table(&[("a", "u"), ("b", "v")], &["u", "v"]).unwrap();
    let swap = SetMap::table(&[("a", "v"), ("b", "u")], &["u", "v"]).unwrap();
    assert!(s.lift(&keep, &corner).is_ok());
    assert!(matches!(s.lift(&swap, &corner), Err(Error::NoLift(_))));
    let e = extend_category(Fin { max: 2 }, letter_universe(2)).unwrap();
    assert!(e.lift(&swap, &corner).is_ok());
}

#[test]
fn restricting_the_semi_ordered_extension_recovers_fin() {
    let fin = Fin { max: 3 };
    let r = restrict_category(semi_ordered_extend(fin.clone(), letter_universe(3)).unwrap()).unwrap();
    let maps: IsoMaps<'_, _, _> = IsoMaps {
        obj: Box::new(|k: &Corner<FinSet>| Ok(k.a.clone())),
        mor: Box::new(|m: &ExtMor<FinSet, SetMap>| Ok(m.f.clone())),
    };
    let rep = check_isomorphism(&r, &fin, &maps);
    for e in &rep.entries {
        assert!(e.item == "lifts" || e.holds(), "{rep}");
    }
    // Only order-preserving bijections lift, and those agree with fin's lifts.
    for k in r.objects() {
        for sigma in opcat::finset::permutations(&k.x) {
            match r.lift(&sigma, &k) {
                Ok(l) => {
                    assert!(sigma.is_monotone());
                    assert_eq!(l.morphism.f, fin.lift(&sigma, &k.a).unwrap().morphism);
                }
                Err(e) => assert!(!sigma.is_monotone() && matches!(e, Error::NoLift(_))),
            }
        }
    }
}

#[test]
fn extensions_satisfy_the_axioms() {
    let e = extend_category(Fin { max: 2 }, letter_universe(2)).unwrap();
    let r = check_operadic_axioms(&e);
    assert!(r.passed(), "{r}");
    let r = opcat::cleavage::check_cleavage(&e);
    assert!(r.passed(), "{r}");
}

#[test]
fn pi0_is_transported() {
    let thick = pi0(&GrCategory::new(Mode::Thick, gr_bound(2))).unwrap();
    let thin = pi0(&GrCategory::new(Mode::Thin, gr_bound(2))).unwrap();
    assert_eq!(thick.ids(), thin.ids());
    let r = pi0(&restrict_category(GrCategory::new(Mode::Thick, gr_bound(2))).unwrap()).unwrap();
    assert_eq!(r.ids(), thick.ids());
}
