//! Categories of finite sets: `Fin`, bold `Fin`, ordered `Δ`, the groupoid of
//! singletons and the terminal category.

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{all_maps, induced_on_preimages, induced_on_pullbacks, monotone_maps, Atom, FinSet, SetMap};
use crate::opcat::{ComponentId, Lift, Mode, OperadicCategory};

/// The single component of the connected fixtures.
pub const ONE_COMPONENT: &str = "*";

fn compose_maps(g: &SetMap, f: &SetMap) -> Result<SetMap> {
    g.compose(f)
}

fn unit_set() -> FinSet {
    FinSet::ordinal(1)
}

/// Thin `Fin`: ordinals `0..=max` and all maps.
#[derive(Clone, Debug)]
pub struct Fin {
    pub max: usize,
}

impl OperadicCategory for Fin {
    type Obj = FinSet;
    type Mor = SetMap;

    fn name(&self) -> String {
        "fin".into()
    }

    fn mode(&self) -> Mode {
        Mode::Thin
    }

    fn objects(&self) -> Vec<FinSet> {
        (0..=self.max).map(FinSet::ordinal).collect()
    }

    fn hom(&self, s: &FinSet, t: &FinSet) -> Vec<SetMap> {
        all_maps(s, t)
    }

    fn source(&self, f: &SetMap) -> FinSet {
        f.domain().clone()
    }

    fn target(&self, f: &SetMap) -> FinSet {
        f.codomain().clone()
    }

    fn identity(&self, s: &FinSet) -> SetMap {
        SetMap::identity(s)
    }

    fn compose(&self, g: &SetMap, f: &SetMap) -> Result<SetMap> {
        compose_maps(g, f)
    }

    fn cardinality(&self, s: &FinSet) -> FinSet {
        s.clone()
    }

    fn card_map(&self, f: &SetMap) -> SetMap {
        f.clone()
    }

    fn fiber(&self, f: &SetMap, s: &Atom) -> Result<FinSet> {
        f.codomain().position(s).ok_or_else(|| Error::domain(format!("{s} not in {}", f.codomain())))?;
        Ok(f.pullback_fiber(s)?.0.set())
    }

    fn induced(&self, f: &SetMap, g: &SetMap, r: &Atom) -> Result<SetMap> {
        induced_on_pullbacks(f, g, r)
    }

    fn lift(&self, sigma: &SetMap, s: &FinSet) -> Result<Lift<FinSet, SetMap>> {
        if sigma.domain() != s || sigma.codomain() != s || !sigma.is_bijective() {
            return Err(Error::NoLift(format!("{sigma} is not a permutation of {s}")));
        }
        Ok(Lift { target: s.clone(), morphism: sigma.clone() })
    }

    fn component(&self, _: &FinSet) -> Option<ComponentId> {
        Some(ONE_COMPONENT.into())
    }

    fn terminal(&self, c: &ComponentId) -> Option<FinSet> {
        (c == ONE_COMPONENT).then(unit_set)
    }
}

/// Bold `Fin`: all subsets of an atom universe and all maps; fibers are preimages.
#[derive(Clone, Debug)]
pub struct BoldFin {
    pub universe: FinSet,
}

impl OperadicCategory for BoldFin {
    type Obj = FinSet;
    type Mor = SetMap;

    fn name(&self) -> String {
        "bfin".into()
    }

    fn mode(&self) -> Mode {
        Mode::Thick
    }

    fn objects(&self) -> Vec<FinSet> {
        self.universe.subsets()
    }

    fn hom(&self, s: &FinSet, t: &FinSet) -> Vec<SetMap> {
        all_maps(s, t)
    }

    fn source(&self, f: &SetMap) -> FinSet {
        f.domain().clone()
    }

    fn target(&self, f: &SetMap) -> FinSet {
        f.codomain().clone()
    }

    fn identity(&self, s: &FinSet) -> SetMap {
        SetMap::identity(s)
    }

    fn compose(&self, g: &SetMap, f: &SetMap) -> Result<SetMap> {
        compose_maps(g, f)
    }

    fn cardinality(&self, s: &FinSet) -> FinSet {
        s.clone()
    }

    fn card_map(&self, f: &SetMap) -> SetMap {
        f.clone()
    }

    fn fiber(&self, f: &SetMap, s: &Atom) -> Result<FinSet> {
        f.codomain().position(s).ok_or_else(|| Error::domain(format!("{s} not in {}", f.codomain())))?;
        Ok(f.preimage(s))
    }

    fn induced(&self, f: &SetMap, g: &SetMap, r: &Atom) -> Result<SetMap> {
        induced_on_preimages(f, g, r)
    }

    fn lift(&self, sigma: &SetMap, s: &FinSet) -> Result<Lift<FinSet, SetMap>> {
        if sigma.domain() != s || !sigma.is_bijective() {
            return Err(Error::NoLift(format!("{sigma} is not a bijection out of {s}")));
        }
        Ok(Lift { target: sigma.codomain().clone(), morphism: sigma.clone() })
    }

    fn component(&self, _: &FinSet) -> Option<ComponentId> {
        Some(ONE_COMPONENT.into())
    }

    fn terminal(&self, c: &ComponentId) -> Option<FinSet> {
        (c == ONE_COMPONENT).then(unit_set)
    }
}

/// Ordinals with order-preserving maps. Operadic but not cloven: only the
/// identity permutation has a lift.
#[derive(Clone, Debug)]
pub struct OrderedDelta {
    pub max: usize,
}

impl OperadicCategory for OrderedDelta {
    type Obj = FinSet;
    type Mor = SetMap;

    fn name(&self) -> String {
        "ordered-delta".into()
    }

    fn mode(&self) -> Mode {
        Mode::Thin
    }

    fn objects(&self) -> Vec<FinSet> {
        (0..=self.max).map(FinSet::ordinal).collect()
    }

    fn hom(&self, s: &FinSet, t: &FinSet) -> Vec<SetMap> {
        monotone_maps(s, t)
    }

    fn source(&self, f: &SetMap) -> FinSet {
        f.domain().clone()
    }

    fn target(&self, f: &SetMap) -> FinSet {
        f.codomain().clone()
    }

    fn identity(&self, s: &FinSet) -> SetMap {
        SetMap::identity(s)
    }

    fn compose(&self, g: &SetMap, f: &SetMap) -> Result<SetMap> {
        compose_maps(g, f)
    }

    fn cardinality(&self, s: &FinSet) -> FinSet {
        s.clone()
    }

    fn card_map(&self, f: &SetMap) -> SetMap {
        f.clone()
    }

    fn fiber(&self, f: &SetMap, s: &Atom) -> Result<FinSet> {
        f.codomain().position(s).ok_or_else(|| Error::domain(format!("{s} not in {}", f.codomain())))?;
        Ok(f.pullback_fiber(s)?.0.set())
    }

    fn induced(&self, f: &SetMap, g: &SetMap, r: &Atom) -> Result<SetMap> {
        induced_on_pullbacks(f, g, r)
    }

    fn lift(&self, sigma: &SetMap, s: &FinSet) -> Result<Lift<FinSet, SetMap>> {
        if sigma.domain() != s || sigma.codomain() != s || !sigma.is_monotone() {
            return Err(Error::NoLift(format!("{sigma} is not order-preserving")));
        }
        Ok(Lift { target: s.clone(), morphism: sigma.clone() })
    }

    fn component(&self, _: &FinSet) -> Option<ComponentId> {
        Some(ONE_COMPONENT.into())
    }

    fn terminal(&self, c: &ComponentId) -> Option<FinSet> {
        (c == ONE_COMPONENT).then(unit_set)
    }
}

/// Singletons `{x}` with the unique bijections between them.
#[derive(Clone, Debug)]
pub struct SingletonGroupoid {
    pub universe: FinSet,
}

impl SingletonGroupoid {
    fn unique(s: &FinSet, t: &FinSet) -> SetMap {
        SetMap::new(s.clone(), t.clone(), t.atoms().to_vec()).expect("singletons")
    }
}

impl OperadicCategory for SingletonGroupoid {
    type Obj = FinSet;
    type Mor = SetMap;

    fn name(&self) -> String {
        "singleton-groupoid".into()
    }

    fn mode(&self) -> Mode {
        Mode::Thick
    }

    fn objects(&self) -> Vec<FinSet> {
        self.universe.iter().map(|a| FinSet::singleton(a.clone())).collect()
    }

    fn hom(&self, s: &FinSet, t: &FinSet) -> Vec<SetMap> {
        if s.len() == 1 && t.len() == 1 {
            vec![Self::unique(s, t)]
        } else {
            Vec::new()
        }
    }

    fn source(&self, f: &SetMap) -> FinSet {
        f.domain().clone()
    }

    fn target(&self, f: &SetMap) -> FinSet {
        f.codomain().clone()
    }

    fn identity(&self, s: &FinSet) -> SetMap {
        SetMap::identity(s)
    }

    fn compose(&self, g: &SetMap, f: &SetMap) -> Result<SetMap> {
        compose_maps(g, f)
    }

    fn cardinality(&self, s: &FinSet) -> FinSet {
        s.clone()
    }

    fn card_map(&self, f: &SetMap) -> SetMap {
        f.clone()
    }

    fn fiber(&self, f: &SetMap, s: &Atom) -> Result<FinSet> {
        f.codomain().position(s).ok_or_else(|| Error::domain(format!("{s} not in {}", f.codomain())))?;
        Ok(f.domain().clone())
    }

    fn induced(&self, f: &SetMap, g: &SetMap, r: &Atom) -> Result<SetMap> {
        g.compose(f)?;
        g.codomain().position(r).ok_or_else(|| Error::domain(format!("{r} not in {}", g.codomain())))?;
        Ok(f.clone())
    }

    fn lift(&self, sigma: &SetMap, s: &FinSet) -> Result<Lift<FinSet, SetMap>> {
        if sigma.domain() != s || s.len() != 1 || !sigma.is_bijective() {
            return Err(Error::NoLift(format!("{sigma} is not a bijection of singletons")));
        }
        Ok(Lift { target: sigma.codomain().clone(), morphism: sigma.clone() })
    }

    fn component(&self, _: &FinSet) -> Option<ComponentId> {
        Some(ONE_COMPONENT.into())
    }

    fn terminal(&self, c: &ComponentId) -> Option<FinSet> {
        (c == ONE_COMPONENT).then(unit_set)
    }
}

/// The object of the terminal category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point;

/// Its identity morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointMor;

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("•")
    }
}

impl fmt::Display for PointMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("1•")
    }
}

/// One object of cardinality `1`, only the identity.
#[derive(Clone, Copy, Debug, Default)]
pub struct TerminalOne;

impl OperadicCategory for TerminalOne {
    type Obj = Point;
    type Mor = PointMor;

    fn name(&self) -> String {
        "terminal-one".into()
    }

    fn mode(&self) -> Mode {
        Mode::Thin
    }

    fn objects(&self) -> Vec<Point> {
        vec![Point]
    }

    fn hom(&self, _: &Point, _: &Point) -> Vec<PointMor> {
        vec![PointMor]
    }

    fn source(&self, _: &PointMor) -> Point {
        Point
    }

    fn target(&self, _: &PointMor) -> Point {
        Point
    }

    fn identity(&self, _: &Point) -> PointMor {
        PointMor
    }

    fn compose(&self, _: &PointMor, _: &PointMor) -> Result<PointMor> {
        Ok(PointMor)
    }

    fn cardinality(&self, _: &Point) -> FinSet {
        unit_set()
    }

    fn card_map(&self, _: &PointMor) -> SetMap {
        SetMap::identity(&unit_set())
    }

    fn fiber(&self, _: &PointMor, s: &Atom) -> Result<Point> {
        if *s != Atom::num(1) {
            return Err(Error::domain(format!("{s} not in {{1}}")));
        }
        Ok(Point)
    }

    fn induced(&self, _: &PointMor, _: &PointMor, r: &Atom) -> Result<PointMor> {
        self.fiber(&PointMor, r).map(|_| PointMor)
    }

    fn lift(&self, sigma: &SetMap, _: &Point) -> Result<Lift<Point, PointMor>> {
        if *sigma != SetMap::identity(&unit_set()) {
            return Err(Error::NoLift(format!("{sigma} is not a permutation of {{1}}")));
        }
        Ok(Lift { target: Point, morphism: PointMor })
    }

    fn component(&self, _: &Point) -> Option<ComponentId> {
        Some(ONE_COMPONENT.into())
    }

    fn terminal(&self, c: &ComponentId) -> Option<Point> {
        (c == ONE_COMPONENT).then_some(Point)
    }
}
