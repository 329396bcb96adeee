//! Restriction of a thick cloven category to ordinal cardinalities, extension
//! of a thin cloven category by corners `(X, σ: X ≅ n, A)`, and the semi-ordered
//! variant of the extension that needs no equivalence classes.
//!
//! Corners are kept normalized: `σ` is always the order isomorphism of `X`,
//! reached by lifting `can ∘ σ⁻¹`. Equality of classes is then structural.

mod iso;

use std::collections::BTreeSet;
use std::fmt;

use crate::cleavage::render_sigma;
use crate::error::{Error, Result};
use crate::finset::{canonical_order_iso, permutations, Atom, FinSet, SetMap};
use crate::opcat::{default_lift_tests, ComponentId, Lift, Mode, OperadicCategory};
use crate::report::{AxiomReport, Check, Witness};

pub use iso::{
    check_isomorphism, roundtrip_thick, roundtrip_thin, thick_mor_to_erc, thick_to_erc, thick_universe, IsoMaps,
};

/// A representative `(X, σ, A)` of an object of the extension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner<O> {
    pub x: FinSet,
    pub sigma: SetMap,
    pub a: O,
}

impl<O: fmt::Display> fmt::Display for Corner<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sigma == canonical_order_iso(&self.x) {
            write!(f, "({}, {})", self.x, self.a)
        } else {
            write!(f, "({}, {}, {})", self.x, self.sigma, self.a)
        }
    }
}

/// A representative `(S, T, f)` of a morphism of the extension, `f: A_S → A_T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtMor<O, M> {
    pub source: Corner<O>,
    pub target: Corner<O>,
    pub f: M,
}

impl<O: fmt::Display, M: fmt::Display> fmt::Display for ExtMor<O, M> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "[{} ⇒ {} by {}]", self.source, self.target, self.f)
    }
}

/// Checks the shape of a corner: `σ: X → n` bijective with `n = |A|`.
pub fn validate_corner<C: OperadicCategory + ?Sized>(cat: &C, c: &Corner<C::Obj>) -> Result<()> {
    let card = cat.cardinality(&c.a);
    if c.sigma.domain() != &c.x || c.sigma.codomain() != &card || !c.sigma.is_bijective() || !card.is_ordinal() {
        return Err(Error::Construction(format!("{} is not a bijection {} → |{}|", c.sigma, c.x, c.a)));
    }
    Ok(())
}

/// The class representative with `σ = can`, and the lift `A → A'` reaching it
/// (`None` when the corner is already normalized).
#[allow(clippy::type_complexity)]
pub fn normalize<C: OperadicCategory + ?Sized>(
    cat: &C,
    c: &Corner<C::Obj>,
) -> Result<(Corner<C::Obj>, Option<C::Mor>)> {
    let can = canonical_order_iso(&c.x);
    if c.sigma == can {
        return Ok((c.clone(), None));
    }
    let phi = can.compose(&c.sigma.inverse()?)?;
    let l = cat.lift(&phi, &c.a)?;
    Ok((Corner { x: c.x.clone(), sigma: can, a: l.target }, Some(l.morphism)))
}

/// Equality of classes: with `φ = σ″ ∘ σ′⁻¹`, the corners agree iff `A″` is the
/// target of the lift of `φ` at `A′`.
pub fn ext_object_equal<C: OperadicCategory + ?Sized>(cat: &C, c1: &Corner<C::Obj>, c2: &Corner<C::Obj>) -> bool {
    if c1.x != c2.x || c1.sigma.codomain() != c2.sigma.codomain() {
        return false;
    }
    let Ok(phi) = c2.sigma.compose(&c1.sigma.inverse().expect("corner")) else { return false };
    if phi.is_identity() {
        return c1.a == c2.a;
    }
    cat.lift(&phi, &c1.a).map(|l| l.target == c2.a).unwrap_or(false)
}

/// Inverse of a lift `λ: A → A'` with cardinality `φ`, as the lift of `φ⁻¹` at `A'`.
pub(crate) fn unlift<C: OperadicCategory + ?Sized>(cat: &C, l: &C::Mor) -> Result<C::Mor> {
    let phi = cat.card_map(l);
    Ok(cat.lift(&phi.inverse()?, &cat.target(l))?.morphism)
}

/// Normalizes both ends of a representative, conjugating `f` by the lifts.
pub fn normalize_mor<C: OperadicCategory + ?Sized>(
    cat: &C,
    source: &Corner<C::Obj>,
    target: &Corner<C::Obj>,
    f: &C::Mor,
) -> Result<ExtMor<C::Obj, C::Mor>> {
    let (s, ls) = normalize(cat, source)?;
    let (t, lt) = normalize(cat, target)?;
    let mut f = f.clone();
    if let Some(ls) = ls {
        f = cat.compose(&f, &unlift(cat, &ls)?)?;
    }
    if let Some(lt) = lt {
        f = cat.compose(&lt, &f)?;
    }
    Ok(ExtMor { source: s, target: t, f })
}

/// The fiber corner of a representative over `y ∈ Y`:
/// `((|f|ξ)⁻¹(i), can ∘ ξ, f⁻¹(i))` with `i = η(y)`, not yet normalized.
pub fn fiber_corner<C: OperadicCategory + ?Sized>(
    cat: &C,
    m: &ExtMor<C::Obj, C::Mor>,
    y: &Atom,
) -> Result<Corner<C::Obj>> {
    let i = m.target.sigma.apply(y)?.clone();
    let fc = cat.card_map(&m.f);
    let over_i = fc.preimage(&i);
    let xy = m.source.x.filter(|x| m.source.sigma.get(x).is_some_and(|n| over_i.contains(n)));
    let xi = m.source.sigma.restrict(&xy, &over_i)?;
    let sigma = canonical_order_iso(&over_i).compose(&xi)?;
    Ok(Corner { x: xy, sigma, a: cat.fiber(&m.f, &i)? })
}

/// The fiber of an extension morphism computed from the given representative,
/// which need not be normalized.
pub fn ext_fiber<C: OperadicCategory + ?Sized>(
    cat: &C,
    m: &ExtMor<C::Obj, C::Mor>,
    y: &Atom,
) -> Result<Corner<C::Obj>> {
    Ok(normalize(cat, &fiber_corner(cat, m, y)?)?.0)
}

/// Another representative of the same class: `(ρξ, A_ρ)`, `(τη, B_τ)` and
/// `τ̃ ∘ f ∘ ρ̃⁻¹` for permutations `ρ` of `|A|` and `τ` of `|B|`.
pub fn rerepresent<C: OperadicCategory + ?Sized>(
    cat: &C,
    m: &ExtMor<C::Obj, C::Mor>,
    rho: &SetMap,
    tau: &SetMap,
) -> Result<ExtMor<C::Obj, C::Mor>> {
    let lr = cat.lift(rho, &m.source.a)?;
    let lt = cat.lift(tau, &m.target.a)?;
    let source = Corner { x: m.source.x.clone(), sigma: rho.compose(&m.source.sigma)?, a: lr.target };
    let target = Corner { x: m.target.x.clone(), sigma: tau.compose(&m.target.sigma)?, a: lt.target };
    let f = cat.compose(&lt.morphism, &cat.compose(&m.f, &unlift(cat, &lr.morphism)?)?)?;
    Ok(ExtMor { source, target, f })
}

/// The thick extension `E(C)` of a thin cloven category, with object
/// cardinalities drawn from subsets of `universe`. With `semi_ordered` set only
/// order-preserving bijections lift, and no classes are involved.
#[derive(Clone, Debug)]
pub struct Extension<C> {
    pub inner: C,
    pub universe: FinSet,
    pub semi_ordered: bool,
}

pub fn extend_category<C: OperadicCategory>(inner: C, universe: FinSet) -> Result<Extension<C>> {
    if inner.mode() != Mode::Thin {
        return Err(Error::config(format!("{} is not thin", inner.name())));
    }
    Ok(Extension { inner, universe, semi_ordered: false })
}

pub fn semi_ordered_extend<C: OperadicCategory>(inner: C, universe: FinSet) -> Result<Extension<C>> {
    let mut e = extend_category(inner, universe)?;
    e.semi_ordered = true;
    Ok(e)
}

impl<C: OperadicCategory> Extension<C> {
    pub fn corner(&self, x: FinSet, a: C::Obj) -> Result<Corner<C::Obj>> {
        let c = Corner { sigma: canonical_order_iso(&x), x, a };
        validate_corner(&self.inner, &c)?;
        Ok(c)
    }
}

impl<C: OperadicCategory> OperadicCategory for Extension<C> {
    type Obj = Corner<C::Obj>;
    type Mor = ExtMor<C::Obj, C::Mor>;

    fn name(&self) -> String {
        let prefix = if self.semi_ordered { "semi-ordered-extend" } else { "extend" };
        format!("{prefix}({})", self.inner.name())
    }

    fn mode(&self) -> Mode {
        Mode::Thick
    }

    fn objects(&self) -> Vec<Self::Obj> {
        let subsets = self.universe.subsets();
        let mut out = Vec::new();
        for a in self.inner.objects() {
            let n = self.inner.cardinality(&a).len();
            for x in subsets.iter().filter(|x| x.len() == n) {
                out.push(Corner { x: x.clone(), sigma: canonical_order_iso(x), a: a.clone() });
            }
        }
        out
    }

    fn hom(&self, s: &Self::Obj, t: &Self::Obj) -> Vec<Self::Mor> {
        self.inner.hom(&s.a, &t.a).into_iter().map(|f| ExtMor { source: s.clone(), target: t.clone(), f }).collect()
    }

    fn source(&self, f: &Self::Mor) -> Self::Obj {
        f.source.clone()
    }

    fn target(&self, f: &Self::Mor) -> Self::Obj {
        f.target.clone()
    }

    fn identity(&self, s: &Self::Obj) -> Self::Mor {
        ExtMor { source: s.clone(), target: s.clone(), f: self.inner.identity(&s.a) }
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor> {
        if f.target != g.source {
            return Err(Error::composition(format!("{} ≠ {}", f.target, g.source)));
        }
        Ok(ExtMor { source: f.source.clone(), target: g.target.clone(), f: self.inner.compose(&g.f, &f.f)? })
    }

    fn cardinality(&self, s: &Self::Obj) -> FinSet {
        s.x.clone()
    }

    /// `η⁻¹ ∘ |f| ∘ ξ`.
    fn card_map(&self, f: &Self::Mor) -> SetMap {
        let eta_inv = f.target.sigma.inverse().expect("corner");
        eta_inv.compose(&self.inner.card_map(&f.f)).and_then(|m| m.compose(&f.source.sigma)).expect("corner shapes")
    }

    fn fiber(&self, f: &Self::Mor, y: &Atom) -> Result<Self::Obj> {
        if !f.target.x.contains(y) {
            return Err(Error::domain(format!("{y} is not in {}", f.target.x)));
        }
        ext_fiber(&self.inner, f, y)
    }

    fn induced(&self, f: &Self::Mor, g: &Self::Mor, r: &Atom) -> Result<Self::Mor> {
        let h = self.compose(g, f)?;
        let i = g.target.sigma.apply(r)?;
        let src = fiber_corner(&self.inner, &h, r)?;
        let tgt = fiber_corner(&self.inner, g, r)?;
        let fi = self.inner.induced(&f.f, &g.f, i)?;
        normalize_mor(&self.inner, &src, &tgt, &fi)
    }

    fn lift(&self, phi: &SetMap, s: &Self::Obj) -> Result<Lift<Self::Obj, Self::Mor>> {
        if phi.domain() != &s.x || !phi.is_bijective() {
            return Err(Error::domain(format!("{phi} is not a bijection out of {}", s.x)));
        }
        if self.semi_ordered && !phi.is_monotone() {
            return Err(Error::NoLift(format!("{phi} is not order-preserving")));
        }
        let moved = Corner { x: phi.codomain().clone(), sigma: s.sigma.compose(&phi.inverse()?)?, a: s.a.clone() };
        let m = normalize_mor(&self.inner, s, &moved, &self.inner.identity(&s.a))?;
        Ok(Lift { target: m.target.clone(), morphism: m })
    }

    fn component(&self, s: &Self::Obj) -> Option<ComponentId> {
        self.inner.component(&s.a)
    }

    fn terminal(&self, c: &ComponentId) -> Option<Self::Obj> {
        let u = self.inner.terminal(c)?;
        let one = FinSet::singleton(Atom::num(1));
        Some(Corner { sigma: SetMap::identity(&one), x: one, a: u })
    }

    fn lift_tests(&self, s: &Self::Obj) -> Vec<SetMap> {
        if self.semi_ordered {
            vec![SetMap::identity(&s.x), canonical_order_iso(&s.x)]
        } else {
            default_lift_tests(Mode::Thick, &s.x)
        }
    }
}

/// The thin restriction `R(C)` of a thick cloven category: objects with
/// ordinal cardinality, fibers moved onto ordinals by canonical lifts.
#[derive(Clone, Debug)]
pub struct Restricted<C: OperadicCategory> {
    pub inner: C,
    objects: Vec<C::Obj>,
}

/// Enumerates `R(C)` as the targets of the canonical lifts of `C`'s objects.
pub fn restrict_category<C: OperadicCategory>(inner: C) -> Result<Restricted<C>> {
    if inner.mode() != Mode::Thick {
        return Err(Error::config(format!("{} is not thick", inner.name())));
    }
    let mut objects = BTreeSet::new();
    for t in inner.objects() {
        let card = inner.cardinality(&t);
        objects.insert(inner.lift(&canonical_order_iso(&card), &t)?.target);
    }
    Ok(Restricted { inner, objects: objects.into_iter().collect() })
}

impl<C: OperadicCategory> Restricted<C> {
    /// `T` moved onto an ordinal, with the lift doing it.
    pub fn to_ordinal(&self, t: &C::Obj) -> Result<Lift<C::Obj, C::Mor>> {
        self.inner.lift(&canonical_order_iso(&self.inner.cardinality(t)), t)
    }
}

impl<C: OperadicCategory> OperadicCategory for Restricted<C> {
    type Obj = C::Obj;
    type Mor = C::Mor;

    fn name(&self) -> String {
        format!("restrict({})", self.inner.name())
    }

    fn mode(&self) -> Mode {
        Mode::Thin
    }

    fn objects(&self) -> Vec<Self::Obj> {
        self.objects.clone()
    }

    fn hom(&self, s: &Self::Obj, t: &Self::Obj) -> Vec<Self::Mor> {
        self.inner.hom(s, t)
    }

    fn source(&self, f: &Self::Mor) -> Self::Obj {
        self.inner.source(f)
    }

    fn target(&self, f: &Self::Mor) -> Self::Obj {
        self.inner.target(f)
    }

    fn identity(&self, s: &Self::Obj) -> Self::Mor {
        self.inner.identity(s)
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor> {
        self.inner.compose(g, f)
    }

    fn cardinality(&self, s: &Self::Obj) -> FinSet {
        self.inner.cardinality(s)
    }

    fn card_map(&self, f: &Self::Mor) -> SetMap {
        self.inner.card_map(f)
    }

    fn fiber(&self, f: &Self::Mor, i: &Atom) -> Result<Self::Obj> {
        Ok(self.to_ordinal(&self.inner.fiber(f, i)?)?.target)
    }

    fn induced(&self, f: &Self::Mor, g: &Self::Mor, r: &Atom) -> Result<Self::Mor> {
        let fr = self.inner.induced(f, g, r)?;
        let ls = self.to_ordinal(&self.inner.source(&fr))?;
        let lt = self.to_ordinal(&self.inner.target(&fr))?;
        let back = unlift(&self.inner, &ls.morphism)?;
        self.inner.compose(&lt.morphism, &self.inner.compose(&fr, &back)?)
    }

    fn lift(&self, sigma: &SetMap, s: &Self::Obj) -> Result<Lift<Self::Obj, Self::Mor>> {
        if !sigma.codomain().is_ordinal() {
            return Err(Error::NoLift(format!("{sigma} does not land in an ordinal")));
        }
        self.inner.lift(sigma, s)
    }

    fn component(&self, s: &Self::Obj) -> Option<ComponentId> {
        self.inner.component(s)
    }

    fn terminal(&self, c: &ComponentId) -> Option<Self::Obj> {
        self.inner.terminal(c)
    }

    fn lift_tests(&self, s: &Self::Obj) -> Vec<SetMap> {
        default_lift_tests(Mode::Thin, &self.cardinality(s))
    }
}

/// For every enumerated morphism, every pair of re-representations `(ρ, τ)`
/// and every `y`, the fiber computed from the new representative is the same
/// class as the one computed from the normalized representative.
pub fn check_fiber_representatives<C: OperadicCategory>(e: &Extension<C>) -> AxiomReport {
    let mut report = AxiomReport::new("fiber-representatives", e.name());
    let mut check = Check::new("representative-independence");
    let en = crate::opcat::Enumeration::new(e);
    for (_, _, m) in en.morphisms() {
        let (na, nb) = (e.inner.cardinality(&m.source.a), e.inner.cardinality(&m.target.a));
        for rho in permutations(&na) {
            for tau in permutations(&nb) {
                let w = || Witness::new().with("f", m).with("rho", render_sigma(&rho)).with("tau", render_sigma(&tau));
                let Some(alt) = check.record_result(rerepresent(&e.inner, m, &rho, &tau), w) else { continue };
                for y in m.target.x.iter() {
                    let wy = || w().with("y", y);
                    match (ext_fiber(&e.inner, m, y), fiber_corner(&e.inner, &alt, y)) {
                        (Ok(want), Ok(other)) => {
                            let same = ext_object_equal(&e.inner, &want, &other)
                                && normalize(&e.inner, &other).map(|n| n.0).as_ref() == Ok(&want);
                            check.record(same, || wy().with("from normalized", &want).with("from other", &other));
                        }
                        (Err(err), _) | (_, Err(err)) => check.record(false, || wy().with("error", err)),
                    }
                }
            }
        }
    }
    report.push(check.finish());
    report
}
