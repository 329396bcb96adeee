use opcat::finset::*;
use opcat::Error;
use proptest::prelude::*;

fn n(i: usize) -> Atom {
    Atom::num(i)
}

fn ord_map(images: &[usize], codomain: usize) -> SetMap {
    SetMap::new(FinSet::ordinal(images.len()), FinSet::ordinal(codomain), images.iter().map(|&i| n(i)).collect())
        .unwrap()
}

#[test]
fn atoms_order_numbers_before_names() {
    let s = FinSet::from_labels(&["b", "10", "a", "2"]);
    assert_eq!(s.to_string(), "{2,10,a,b}");
    assert_eq!(Atom::new("07"), Atom::Name("07".into()));
    assert!(FinSet::ordinal(3).is_ordinal());
    assert!(FinSet::ordinal(0).is_empty());
}

#[test]
fn compose_constant() {
    let f = SetMap::table(&[("a", "u"), ("b", "u")], &["u"]).unwrap();
    let g = SetMap::table(&[("u", "z")], &["z"]).unwrap();
    assert_eq!(g.compose(&f).unwrap(), SetMap::table(&[("a", "z"), ("b", "z")], &["z"]).unwrap());
}

#[test]
fn compose_with_identity() {
    let id = SetMap::identity(&FinSet::from_labels(&["a", "b", "c"]));
    let g = SetMap::table(&[("a", "x"), ("b", "y"), ("c", "x")], &["x", "y"]).unwrap();
    assert_eq!(g.compose(&id).unwrap(), g);
}

#[test]
fn compose_ordinal_maps() {
    let f = ord_map(&[1, 2, 1], 2);
    let swap = ord_map(&[2, 1], 2);
    assert_eq!(swap.compose(&f).unwrap(), ord_map(&[2, 1, 2], 2));
}

#[test]
fn compose_mismatch_is_an_error() {
    let f = ord_map(&[1, 2, 1], 2);
    assert!(matches!(f.compose(&f), Err(Error::Composition(_))));
}

#[test]
fn preimages() {
    let f = ord_map(&[1, 2, 1], 2);
    assert_eq!(f.preimage(&n(1)), FinSet::new([n(1), n(3)]));
    let c = SetMap::table(&[("a", "u"), ("b", "u"), ("c", "u")], &["u"]).unwrap();
    assert_eq!(c.preimage(&Atom::new("u")), FinSet::from_labels(&["a", "b", "c"]));
    let inj = ord_map(&[1, 3], 3);
    assert!(inj.preimage(&n(2)).is_empty());
    assert!(matches!(f.try_preimage(&n(3)), Err(Error::Domain(_))));
}

#[test]
fn pullback_fibers() {
    let f = ord_map(&[1, 2, 1], 2);
    let (k, i) = f.pullback_fiber(&n(1)).unwrap();
    assert_eq!(k, Ordinal(2));
    assert_eq!(i, SetMap::new(FinSet::ordinal(2), FinSet::ordinal(3), vec![n(1), n(3)]).unwrap());
    let id = SetMap::identity(&FinSet::ordinal(3));
    for j in 1..=3 {
        let (k, i) = id.pullback_fiber(&n(j)).unwrap();
        assert_eq!(k, Ordinal(1));
        assert_eq!(i.images(), &[n(j)]);
    }
    let (k, i) = ord_map(&[1, 1], 2).pullback_fiber(&n(2)).unwrap();
    assert_eq!(k, Ordinal(0));
    assert!(i.domain().is_empty());
    assert!(matches!(f.pullback_fiber(&n(3)), Err(Error::Domain(_))));
}

#[test]
fn canonical_order_isos() {
    let s = FinSet::new([n(1), n(3)]);
    assert_eq!(canonical_order_iso(&s).images(), &[n(1), n(2)]);
    let ab = FinSet::from_labels(&["b", "a"]);
    let iso = canonical_order_iso(&ab);
    assert_eq!(iso.apply(&Atom::new("a")).unwrap(), &n(1));
    assert_eq!(iso.apply(&Atom::new("b")).unwrap(), &n(2));
    let e = canonical_order_iso(&FinSet::empty());
    assert!(e.domain().is_empty() && e.codomain().is_empty());
}

#[test]
fn induced_maps() {
    let f = SetMap::table(&[("a", "u"), ("b", "u"), ("c", "v")], &["u", "v"]).unwrap();
    let g = SetMap::table(&[("u", "w"), ("v", "w")], &["w"]).unwrap();
    assert_eq!(induced_on_preimages(&f, &g, &Atom::new("w")).unwrap(), f);

    // g injective: the induced map is f restricted to one fiber.
    let g = SetMap::table(&[("u", "p"), ("v", "q")], &["p", "q", "r"]).unwrap();
    let fu = induced_on_preimages(&f, &g, &Atom::new("p")).unwrap();
    assert_eq!(fu, SetMap::table(&[("a", "u"), ("b", "u")], &["u"]).unwrap());
    let empty = induced_on_preimages(&f, &g, &Atom::new("r")).unwrap();
    assert!(empty.domain().is_empty() && empty.codomain().is_empty());
    assert!(induced_on_preimages(&f, &g, &Atom::new("zz")).is_err());
}

#[test]
fn cycle_notation_and_signs() {
    let p = ord_map(&[2, 1, 4, 3], 4);
    assert_eq!(p.cycle_notation().unwrap(), "(1 2)(3 4)");
    assert_eq!(permutation_sign(&[1, 0, 3, 2]), Sign::Plus);
    assert_eq!(permutation_sign(&[1, 0, 2]), Sign::Minus);
    assert_eq!(sorting_sign(&[3, 1, 2]), Sign::Plus);
    assert_eq!(sorting_sign(&["b", "a"]), Sign::Minus);
}

#[test]
fn map_counts() {
    let (a, b) = (FinSet::ordinal(3), FinSet::ordinal(2));
    assert_eq!(all_maps(&a, &b).len(), 8);
    assert_eq!(monotone_maps(&a, &b).len(), 4);
    assert_eq!(bijections(&a, &a).len(), 6);
    assert_eq!(permutations(&FinSet::ordinal(4)).len(), 24);
}

fn arb_map(max: usize) -> impl Strategy<Value = SetMap> {
    (0..=max, 1..=max).prop_flat_map(|(d, c)| proptest::collection::vec(1..=c, d).prop_map(move |im| ord_map(&im, c)))
}

/// `g ∘ f` for random `f`, with `g` out of `f`'s codomain.
fn arb_pair() -> impl Strategy<Value = (SetMap, SetMap)> {
    arb_map(5).prop_flat_map(|f| {
        let c = f.codomain().len();
        (Just(f), 1..=4usize).prop_flat_map(move |(f, e)| {
            proptest::collection::vec(1..=e, c).prop_map(move |im| (f.clone(), ord_map(&im, e)))
        })
    })
}

fn letters() -> impl Strategy<Value = FinSet> {
    proptest::collection::btree_set("[a-f]{1,2}", 0..6).prop_map(|s| s.iter().map(|l| Atom::new(l)).collect())
}

proptest! {
    #[test]
    fn preimage_of_composite_is_union((f, g) in arb_pair()) {
        let h = g.compose(&f).unwrap();
        for t in g.codomain().iter() {
            let union = g.preimage(t).iter().fold(FinSet::empty(), |u, s| u.union(&f.preimage(s)));
            prop_assert_eq!(h.preimage(t), union);
        }
    }

    #[test]
    fn pullback_fiber_injection_hits_the_preimage(f in arb_map(5)) {
        for i in f.codomain().iter() {
            let (k, inj) = f.pullback_fiber(i).unwrap();
            prop_assert_eq!(inj.image(), f.preimage(i));
            prop_assert_eq!(k.0, f.preimage(i).len());
            prop_assert!(inj.is_injective() && inj.is_monotone());
        }
    }

    #[test]
    fn canonical_iso_is_a_monotone_bijection(s in letters()) {
        let iso = canonical_order_iso(&s);
        prop_assert!(iso.is_bijective() && iso.is_monotone());
        let inv = iso.inverse().unwrap();
        prop_assert!(inv.compose(&iso).unwrap().is_identity());
        prop_assert!(iso.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn induced_maps_compose((f, g) in arb_pair(), k in 1..=3usize, seed in proptest::collection::vec(1..=3usize, 4)) {
        // A fourth object: k : R → K, and the factorisation g' = k ∘ g.
        let r = g.codomain().len();
        let kmap = ord_map(&seed[..r].iter().map(|&x| x.min(k)).collect::<Vec<_>>(), k);
        let kg = kmap.compose(&g).unwrap();
        for t in kmap.codomain().iter() {
            // (S → R over t) = (R-fibers) ∘ (S → R-fibers) through g.
            let sf = induced_on_preimages(&g.compose(&f).unwrap(), &kmap, t).unwrap();
            let a = induced_on_preimages(&f, &kg, t).unwrap();
            let b = induced_on_preimages(&g, &kmap, t).unwrap();
            prop_assert_eq!(b.compose(&a).unwrap(), sf);
        }
    }
}
