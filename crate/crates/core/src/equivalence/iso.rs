//! Checking that explicit object and morphism maps form an isomorphism of
//! bounded operadic categories, and the round-trip witnesses built from it.

use std::collections::HashSet;

use super::{extend_category, restrict_category, unlift, Corner, ExtMor};
use crate::error::{Error, Result};
use crate::finset::{canonical_order_iso, FinSet, SetMap};
use crate::opcat::{Enumeration, OperadicCategory};
use crate::report::{AxiomReport, Check, Witness};

type ObjFn<'a, C, D> = Box<dyn Fn(&<C as OperadicCategory>::Obj) -> Result<<D as OperadicCategory>::Obj> + 'a>;
type MorFn<'a, C, D> = Box<dyn Fn(&<C as OperadicCategory>::Mor) -> Result<<D as OperadicCategory>::Mor> + 'a>;

/// A candidate functor `C → D`.
pub struct IsoMaps<'a, C: OperadicCategory, D: OperadicCategory> {
    pub obj: ObjFn<'a, C, D>,
    pub mor: MorFn<'a, C, D>,
}

/// Checks on the bounded enumerations that the maps are bijective on objects
/// and hom-sets, functorial, and preserve cardinalities, fibers and lifts.
pub fn check_isomorphism<C: OperadicCategory, D: OperadicCategory>(
    c: &C,
    d: &D,
    maps: &IsoMaps<'_, C, D>,
) -> AxiomReport {
    let mut report = AxiomReport::new("isomorphism", format!("{} → {}", c.name(), d.name()));
    let en = Enumeration::new(c);
    let d_objects = d.objects();
    let mut objects = Check::new("objects-bijective");
    let mut homs = Check::new("hom-bijective");
    let mut functor = Check::new("functorial");
    let mut card = Check::new("cardinality");
    let mut fibers = Check::new("fibers");
    let mut lifts = Check::new("lifts");

    let mut image: Vec<D::Obj> = Vec::new();
    for s in &en.objects {
        let w = || Witness::new().with("object", s);
        let Some(fs) = objects.record_result((maps.obj)(s), w) else { continue };
        card.record(c.cardinality(s) == d.cardinality(&fs), || w().with("image", &fs));
        functor.record((maps.mor)(&c.identity(s)).ok() == Some(d.identity(&fs)), || w().with("image", &fs));
        image.push(fs);
    }
    if image.len() == en.objects.len() {
        let distinct: HashSet<&D::Obj> = image.iter().collect();
        let target: HashSet<&D::Obj> = d_objects.iter().collect();
        objects.record(distinct.len() == image.len(), || Witness::new().with("reason", "not injective"));
        objects.record(distinct == target, || {
            let missing = d_objects.iter().find(|t| !distinct.contains(t));
            let extra = image.iter().find(|t| !target.contains(t));
            let w = Witness::new();
            let w = match missing {
                Some(m) => w.with("missed", m),
                None => w,
            };
            match extra {
                Some(e) => w.with("outside", e),
                None => w,
            }
        });
        for (i, s) in en.objects.iter().enumerate() {
            for (j, t) in en.objects.iter().enumerate() {
                let w = || Witness::new().with("source", s).with("target", t);
                let mapped: Result<HashSet<D::Mor>> = c.hom(s, t).iter().map(|f| (maps.mor)(f)).collect();
                let Some(mapped) = homs.record_result(mapped, w) else { continue };
                let want: HashSet<D::Mor> = d.hom(&image[i], &image[j]).into_iter().collect();
                homs.record(mapped.len() == c.hom(s, t).len() && mapped == want, || {
                    w().with("mapped", mapped.len()).with("expected", want.len())
                });
            }
        }
    }

    for (_, j, f) in en.morphisms() {
        let w = || Witness::new().with("f", f);
        let Some(ff) = functor.record_result((maps.mor)(f), w) else { continue };
        card.record(c.card_map(f) == d.card_map(&ff), || w().with("image", &ff));
        for x in c.cardinality(&c.target(f)).iter() {
            let wx = || w().with("x", x);
            let lhs = c.fiber(f, x).and_then(|fib| (maps.obj)(&fib));
            let rhs = d.fiber(&ff, x);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => fibers.record(l == r, || wx().with("mapped fiber", &l).with("fiber of image", &r)),
                (Err(e), _) | (_, Err(e)) => fibers.record(false, || wx().with("error", e)),
            }
        }
        for (_, g) in &en.out[j] {
            let wg = || w().with("g", g);
            let lhs = c.compose(g, f).and_then(|h| (maps.mor)(&h));
            let rhs = (maps.mor)(g).and_then(|fg| d.compose(&fg, &ff));
            functor.record(lhs.is_ok() && lhs == rhs, wg);
        }
    }

    for s in &en.objects {
        for sigma in c.lift_tests(s) {
            let w = || Witness::new().with("object", s).with("sigma", &sigma);
            let lhs = c.lift(&sigma, s).and_then(|l| (maps.mor)(&l.morphism));
            let rhs = (maps.obj)(s).and_then(|fs| d.lift(&sigma, &fs)).map(|l| l.morphism);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => lifts.record(l == r, || w().with("mapped lift", &l).with("lift of image", &r)),
                (Err(Error::NoLift(_)), Err(Error::NoLift(_))) => lifts.record(true, Witness::new),
                (Err(e), _) | (_, Err(e)) => lifts.record(false, || w().with("error", e)),
            }
        }
    }
    for check in [objects, homs, functor, card, fibers, lifts] {
        report.push(check.finish());
    }
    report
}

/// Checks `g ∘ f = id` on the enumerated objects and morphisms of `C`.
fn check_identity_roundtrip<C: OperadicCategory, D: OperadicCategory>(
    name: &str,
    c: &C,
    there: &IsoMaps<'_, C, D>,
    back: &IsoMaps<'_, D, C>,
) -> crate::report::Entry {
    let en = Enumeration::new(c);
    let mut check = Check::new(name);
    for s in &en.objects {
        let r = (there.obj)(s).and_then(|t| (back.obj)(&t));
        check.record(r.as_ref().ok() == Some(s), || Witness::new().with("object", s));
    }
    for (_, _, f) in en.morphisms() {
        let r = (there.mor)(f).and_then(|t| (back.mor)(&t));
        check.record(r.as_ref().ok() == Some(f), || Witness::new().with("f", f));
    }
    check.finish()
}

/// `I: C → R E C` and `J: R E C → C` for a thin cloven `C`: checks that `I` is
/// an isomorphism and that `J ∘ I` and `I ∘ J` are identities.
pub fn roundtrip_thin<C: OperadicCategory + Clone>(c: &C) -> Result<AxiomReport> {
    let n = c.objects().iter().map(|a| c.cardinality(a).len()).max().unwrap_or(0);
    let rec = restrict_category(extend_category(c.clone(), FinSet::ordinal(n))?)?;
    let corner = |a: &C::Obj| -> Result<Corner<C::Obj>> {
        let x = c.cardinality(a);
        Ok(Corner { sigma: SetMap::identity(&x), x, a: a.clone() })
    };
    let i_maps: IsoMaps<'_, C, _> = IsoMaps {
        obj: Box::new(corner),
        mor: Box::new(move |f: &C::Mor| {
            Ok(ExtMor { source: corner(&c.source(f))?, target: corner(&c.target(f))?, f: f.clone() })
        }),
    };
    let j_maps: IsoMaps<'_, _, C> = IsoMaps {
        obj: Box::new(|k: &Corner<C::Obj>| {
            if !k.x.is_ordinal() || !k.sigma.is_identity() {
                return Err(Error::domain(format!("{k} is not in the restriction")));
            }
            Ok(k.a.clone())
        }),
        mor: Box::new(|m: &ExtMor<C::Obj, C::Mor>| Ok(m.f.clone())),
    };
    let mut report = check_isomorphism(c, &rec, &i_maps);
    report.suite = "roundtrip".into();
    report.subject = format!("R E {}", c.name());
    report.push(check_identity_roundtrip("J∘I", c, &i_maps, &j_maps));
    report.push(check_identity_roundtrip("I∘J", &rec, &j_maps, &i_maps));
    Ok(report)
}

/// `G` on objects: `T ↦ (|T|, can, T')` with `T → T'` the canonical lift.
pub fn thick_to_erc<C: OperadicCategory>(c: &C, t: &C::Obj) -> Result<Corner<C::Obj>> {
    let x = c.cardinality(t);
    let a = c.lift(&canonical_order_iso(&x), t)?.target;
    Ok(Corner { sigma: canonical_order_iso(&x), x, a })
}

/// `G` on morphisms: `f` conjugated by the canonical lifts of its ends.
pub fn thick_mor_to_erc<C: OperadicCategory>(c: &C, f: &C::Mor) -> Result<ExtMor<C::Obj, C::Mor>> {
    let canon = |t: &C::Obj| c.lift(&canonical_order_iso(&c.cardinality(t)), t);
    let (s, t) = (c.source(f), c.target(f));
    let back = unlift(c, &canon(&s)?.morphism)?;
    let moved = c.compose(&canon(&t)?.morphism, &c.compose(f, &back)?)?;
    Ok(ExtMor { source: thick_to_erc(c, &s)?, target: thick_to_erc(c, &t)?, f: moved })
}

/// The universe of `E R C`: the union of the cardinalities of `C`'s objects.
pub fn thick_universe<C: OperadicCategory>(c: &C) -> FinSet {
    c.objects().iter().fold(FinSet::empty(), |u, t| u.union(&c.cardinality(t)))
}

/// `G: C → E R C` and `F: E R C → C` for a thick cloven `C`, with `ω` the
/// canonical order isomorphism: checks that `G` is an isomorphism and that
/// `F ∘ G` and `G ∘ F` are identities. Object cardinalities of `E R C` range
/// over the union of the cardinalities of `C`'s objects.
pub fn roundtrip_thick<C: OperadicCategory + Clone>(c: &C) -> Result<AxiomReport> {
    let erc = extend_category(restrict_category(c.clone())?, thick_universe(c))?;
    let g_maps: IsoMaps<'_, C, _> = IsoMaps {
        obj: Box::new(move |t: &C::Obj| thick_to_erc(c, t)),
        mor: Box::new(move |f: &C::Mor| thick_mor_to_erc(c, f)),
    };
    let to_thick = move |k: &Corner<C::Obj>| c.lift(&k.sigma.inverse()?, &k.a);
    let f_maps: IsoMaps<'_, _, C> = IsoMaps {
        obj: Box::new(move |k: &Corner<C::Obj>| Ok(to_thick(k)?.target)),
        mor: Box::new(move |m: &ExtMor<C::Obj, C::Mor>| {
            let back = unlift(c, &to_thick(&m.source)?.morphism)?;
            c.compose(&to_thick(&m.target)?.morphism, &c.compose(&m.f, &back)?)
        }),
    };
    let mut report = check_isomorphism(c, &erc, &g_maps);
    report.suite = "roundtrip".into();
    report.subject = format!("E R {}", c.name());
    report.push(check_identity_roundtrip("F∘G", c, &g_maps, &f_maps));
    report.push(check_identity_roundtrip("G∘F", &erc, &f_maps, &g_maps));
    Ok(report)
}
