//! Cleavages: functorial lifts of bijections of cardinalities, and the checks
//! that a category's lifts exist, compose and are compatible with fibers.

use crate::error::{Error, Result};
use crate::finset::{canonical_order_iso, Atom, FinSet, SetMap};
use crate::opcat::{ComponentId, Enumeration, Lift, Mode, OperadicCategory};
use crate::report::{AxiomReport, Check, Witness};

pub type LiftResult<C> = Lift<<C as OperadicCategory>::Obj, <C as OperadicCategory>::Mor>;

/// Renders a bijection in cycle notation when it is a permutation.
pub fn render_sigma(sigma: &SetMap) -> String {
    sigma.cycle_notation().unwrap_or_else(|| sigma.to_string())
}

/// `U_c^{x}`: the target of the lift of `{1} → {x}` at `U_c`.
pub fn unit_translate<C: OperadicCategory + ?Sized>(cat: &C, c: &ComponentId, x: &Atom) -> Result<C::Obj> {
    let u = cat.terminal(c).ok_or_else(|| Error::config(format!("no chosen terminal for component {c}")))?;
    let one = FinSet::singleton(Atom::num(1));
    if *x == Atom::num(1) {
        return Ok(u);
    }
    let sigma = SetMap::new(one, FinSet::singleton(x.clone()), vec![x.clone()])?;
    Ok(cat.lift(&sigma, &u)?.target)
}

/// Lifts a bijection and checks that the result has the promised source and cardinality.
pub fn lift<C: OperadicCategory + ?Sized>(cat: &C, sigma: &SetMap, s: &C::Obj) -> Result<LiftResult<C>> {
    if !sigma.is_bijective() {
        return Err(Error::domain(format!("{sigma} is not a bijection")));
    }
    if sigma.domain() != &cat.cardinality(s) {
        return Err(Error::domain(format!("{sigma} does not start at |{s}|")));
    }
    let l = cat.lift(sigma, s)?;
    if cat.source(&l.morphism) != *s || cat.target(&l.morphism) != l.target || cat.card_map(&l.morphism) != *sigma {
        return Err(Error::Coherence(format!("lift of {sigma} at {s} is {}", l.morphism)));
    }
    Ok(l)
}

/// `f̃ = σ̃ ∘ f ∘ ρ̃⁻¹` for bijections `ρ` of `|S|` and `σ` of `|T|`.
pub fn conjugate<C: OperadicCategory + ?Sized>(cat: &C, f: &C::Mor, rho: &SetMap, sigma: &SetMap) -> Result<C::Mor> {
    let s = cat.source(f);
    let t = cat.target(f);
    let rho_l = lift(cat, rho, &s)?;
    let back = lift(cat, &rho.inverse()?, &rho_l.target)?;
    let sig = lift(cat, sigma, &t)?;
    cat.compose(&sig.morphism, &cat.compose(f, &back.morphism)?)
}

/// The bijection `ρ_a` between the fiber cardinalities over `a` and `b = σ(a)`.
pub fn fiber_bijection(mode: Mode, f_card: &SetMap, rho: &SetMap, a: &Atom) -> Result<SetMap> {
    let pre = f_card.preimage(a);
    let img = FinSet::new(pre.iter().map(|x| rho.apply(x).cloned()).collect::<Result<Vec<_>>>()?);
    let thick = rho.restrict(&pre, &img)?;
    match mode {
        Mode::Thick => Ok(thick),
        Mode::Thin => {
            let src = canonical_order_iso(&pre);
            let tgt = canonical_order_iso(&img);
            tgt.compose(&thick)?.compose(&src.inverse()?)
        }
    }
}

/// Checks existence, identity, functoriality and fiber compatibility of lifts.
pub fn check_cleavage<C: OperadicCategory + ?Sized>(cat: &C) -> AxiomReport {
    check_cleavage_on(cat, &Enumeration::new(cat))
}

pub fn check_cleavage_on<C: OperadicCategory + ?Sized>(cat: &C, en: &Enumeration<C>) -> AxiomReport {
    let mode = cat.mode();
    let mut report = AxiomReport::new("cleavage", cat.name());
    let mut exists = Check::new("lift-existence");
    let mut ident = Check::new("lift-identity");
    let mut funct = Check::new("lift-functoriality");
    let mut inverse = Check::new("lift-inverse");
    let mut compat = Check::new("fiber-compatibility");

    let wit = |s: &C::Obj, sigma: &SetMap| Witness::new().with("object", s).with("sigma", render_sigma(sigma));
    for (s, sigma) in cat.lift_probes() {
        let r = lift(cat, &sigma, &s);
        exists.record(r.is_ok(), || {
            let w = wit(&s, &sigma);
            match r {
                Err(e) => w.with("error", e),
                Ok(_) => w,
            }
        });
    }
    for s in &en.objects {
        let card = cat.cardinality(s);
        let id = SetMap::identity(&card);
        if let Ok(l) = lift(cat, &id, s) {
            ident.record(l.morphism == cat.identity(s), || wit(s, &id).with("lift", &l.morphism));
        }
        for sigma in cat.lift_tests(s) {
            let l1 = match lift(cat, &sigma, s) {
                Ok(l) => {
                    exists.record(true, Witness::new);
                    l
                }
                Err(e) => {
                    exists.record(false, || wit(s, &sigma).with("error", e));
                    continue;
                }
            };
            if let Some(inv) = inverse.record_result(sigma.inverse(), || wit(s, &sigma)) {
                match lift(cat, &inv, &l1.target) {
                    Ok(back) => {
                        let comp = cat.compose(&back.morphism, &l1.morphism);
                        inverse.record(back.target == *s && comp.as_ref().ok() == Some(&cat.identity(s)), || {
                            wit(s, &sigma).with("lift", &l1.morphism).with("lift of inverse", &back.morphism)
                        });
                    }
                    Err(e) => inverse.fail_with(wit(s, &sigma).with("error", e)),
                }
            }
            for tau in cat.lift_tests(&l1.target) {
                let w = || wit(s, &sigma).with("tau", render_sigma(&tau));
                let Ok(l2) = lift(cat, &tau, &l1.target) else { continue };
                let Some(ts) = funct.record_result(tau.compose(&sigma), w) else { continue };
                let Some(direct) = funct.record_result(lift(cat, &ts, s), w) else { continue };
                let comp = cat.compose(&l2.morphism, &l1.morphism);
                funct.record(direct.target == l2.target && comp.as_ref().ok() == Some(&direct.morphism), || {
                    w().with("lift of composite", &direct.morphism)
                });
            }
        }
    }
    for (_, _, f) in en.morphisms() {
        let (s, t) = (cat.source(f), cat.target(f));
        let fc = cat.card_map(f);
        for rho in cat.lift_tests(&s) {
            for sigma in cat.lift_tests(&t) {
                let w =
                    || Witness::new().with("f", f).with("rho", render_sigma(&rho)).with("sigma", render_sigma(&sigma));
                let Ok(ft) = conjugate(cat, f, &rho, &sigma) else { continue };
                for a in cat.cardinality(&t).iter() {
                    let b = sigma.apply(a).expect("bijection on |T|");
                    let wa = || w().with("a", a);
                    let Some(rho_a) = compat.record_result(fiber_bijection(mode, &fc, &rho, a), wa) else { continue };
                    let Some(fa) = compat.record_result(cat.fiber(f, a), wa) else { continue };
                    let Some(want) = compat.record_result(lift(cat, &rho_a, &fa), wa) else { continue };
                    let Some(got) = compat.record_result(cat.fiber(&ft, b), wa) else { continue };
                    compat.record(got == want.target, || wa().with("f̃⁻¹(b)", &got).with("lift target", &want.target));
                }
            }
        }
    }
    for c in [exists, ident, funct, inverse, compat] {
        report.push(c.finish());
    }
    report
}
