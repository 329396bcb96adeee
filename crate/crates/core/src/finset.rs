//! Finite sets over a totally ordered atom universe, ordinals, and set maps.
//!
//! Labels made only of decimal digits (no leading zero) are numeric atoms. They
//! compare numerically and precede all other labels, which compare as text. The
//! ordinal `n` is therefore literally the set `{1, ..., n}` of the universe,
//! and `{1}` is the same set as the ordinal `1`.

use std::fmt;
use std::ops::{Mul, Neg};
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Num(u32),
    Name(Arc<str>),
}

impl Atom {
    pub fn new(label: &str) -> Atom {
        match parse_num(label) {
            Some(n) => Atom::Num(n),
            None => Atom::Name(label.into()),
        }
    }

    pub fn num(n: usize) -> Atom {
        Atom::Num(u32::try_from(n).expect("ordinal index fits in u32"))
    }

    pub fn as_num(&self) -> Option<usize> {
        match self {
            Atom::Num(n) => Some(*n as usize),
            Atom::Name(_) => None,
        }
    }
}

fn parse_num(s: &str) -> Option<u32> {
    let digits = !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom::new(s)
    }
}

impl From<usize> for Atom {
    fn from(n: usize) -> Self {
        Atom::num(n)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Num(n) => write!(f, "{n}"),
            Atom::Name(s) => f.write_str(s),
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.is_empty() {
            return Err(serde::de::Error::custom("empty atom label"));
        }
        Ok(Atom::new(&s))
    }
}

/// A finite set of atoms, kept sorted in the global order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Atom>", into = "Vec<Atom>")]
pub struct FinSet(Vec<Atom>);

impl From<Vec<Atom>> for FinSet {
    fn from(v: Vec<Atom>) -> Self {
        FinSet::new(v)
    }
}

impl From<FinSet> for Vec<Atom> {
    fn from(s: FinSet) -> Self {
        s.0
    }
}

impl FromIterator<Atom> for FinSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        FinSet::new(iter)
    }
}

impl FinSet {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> FinSet {
        let mut v: Vec<Atom> = atoms.into_iter().collect();
        v.sort();
        v.dedup();
        FinSet(v)
    }

    pub fn from_labels(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().map(|l| Atom::new(l)))
    }

    pub fn empty() -> FinSet {
        FinSet(Vec::new())
    }

    pub fn singleton(a: Atom) -> FinSet {
        FinSet(vec![a])
    }

    pub fn ordinal(n: usize) -> FinSet {
        FinSet((1..=n).map(Atom::num).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Atom> {
        self.0.iter()
    }

    pub fn position(&self, a: &Atom) -> Option<usize> {
        self.0.binary_search(a).ok()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.position(a).is_some()
    }

    pub fn as_ordinal(&self) -> Option<Ordinal> {
        self.0.iter().enumerate().all(|(i, a)| a.as_num() == Some(i + 1)).then_some(Ordinal(self.len()))
    }

    pub fn is_ordinal(&self) -> bool {
        self.as_ordinal().is_some()
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        self.0.iter().all(|a| other.contains(a))
    }

    pub fn is_disjoint(&self, other: &FinSet) -> bool {
        self.0.iter().all(|a| !other.contains(a))
    }

    pub fn union(&self, other: &FinSet) -> FinSet {
        FinSet::new(self.0.iter().chain(other.iter()).cloned())
    }

    pub fn difference(&self, other: &FinSet) -> FinSet {
        FinSet(self.0.iter().filter(|a| !other.contains(a)).cloned().collect())
    }

    pub fn filter(&self, mut keep: impl FnMut(&Atom) -> bool) -> FinSet {
        FinSet(self.0.iter().filter(|a| keep(a)).cloned().collect())
    }

    /// All subsets, smallest first; equal sizes in lexicographic order.
    pub fn subsets(&self) -> Vec<FinSet> {
        (0..=self.len()).flat_map(|k| self.0.iter().cloned().combinations(k).map(FinSet)).collect()
    }
}

impl<'a> IntoIterator for &'a FinSet {
    type Item = &'a Atom;
    type IntoIter = std::slice::Iter<'a, Atom>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The ordinal `{1, ..., n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ordinal(pub usize);

impl Ordinal {
    pub fn set(self) -> FinSet {
        FinSet::ordinal(self.0)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// A total function between finite sets. Images are stored in domain order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetMap {
    domain: FinSet,
    codomain: FinSet,
    images: Vec<Atom>,
}

impl SetMap {
    pub fn new(domain: FinSet, codomain: FinSet, images: Vec<Atom>) -> Result<SetMap> {
        if images.len() != domain.len() {
            return Err(Error::domain(format!("{} images for a domain of size {}", images.len(), domain.len())));
        }
        if let Some(bad) = images.iter().find(|a| !codomain.contains(a)) {
            return Err(Error::domain(format!("image {bad} not in codomain {codomain}")));
        }
        Ok(SetMap { domain, codomain, images })
    }

    /// Trusted constructor for images already known to lie in the codomain.
    pub(crate) fn new_unchecked(domain: FinSet, codomain: FinSet, images: Vec<Atom>) -> SetMap {
        debug_assert_eq!(domain.len(), images.len());
        debug_assert!(images.iter().all(|a| codomain.contains(a)));
        SetMap { domain, codomain, images }
    }

    pub fn from_pairs(
        domain: FinSet,
        codomain: FinSet,
        pairs: impl IntoIterator<Item = (Atom, Atom)>,
    ) -> Result<SetMap> {
        let mut slots: Vec<Option<Atom>> = vec![None; domain.len()];
        for (x, y) in pairs {
            let i = domain.position(&x).ok_or_else(|| Error::domain(format!("{x} not in domain {domain}")))?;
            if slots[i].replace(y).is_some() {
                return Err(Error::domain(format!("{x} assigned twice")));
            }
        }
        let images = slots
            .into_iter()
            .zip(domain.iter())
            .map(|(y, x)| y.ok_or_else(|| Error::domain(format!("{x} has no image"))))
            .collect::<Result<Vec<_>>>()?;
        SetMap::new(domain, codomain, images)
    }

    pub fn from_fn(domain: FinSet, codomain: FinSet, f: impl Fn(&Atom) -> Atom) -> Result<SetMap> {
        let images = domain.iter().map(f).collect();
        SetMap::new(domain, codomain, images)
    }

    /// Shorthand for tests and fixtures: `SetMap::table(&[("1","2"),("2","1")], &["1","2"])`.
    pub fn table(pairs: &[(&str, &str)], codomain: &[&str]) -> Result<SetMap> {
        let domain = FinSet::new(pairs.iter().map(|(x, _)| Atom::new(x)));
        let pairs = pairs.iter().map(|(x, y)| (Atom::new(x), Atom::new(y)));
        SetMap::from_pairs(domain, FinSet::from_labels(codomain), pairs)
    }

    pub fn identity(set: &FinSet) -> SetMap {
        SetMap { domain: set.clone(), codomain: set.clone(), images: set.0.clone() }
    }

    pub fn domain(&self) -> &FinSet {
        &self.domain
    }

    pub fn codomain(&self) -> &FinSet {
        &self.codomain
    }

    pub fn images(&self) -> &[Atom] {
        &self.images
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Atom, &Atom)> {
        self.domain.iter().zip(self.images.iter())
    }

    pub fn get(&self, x: &Atom) -> Option<&Atom> {
        self.domain.position(x).map(|i| &self.images[i])
    }

    pub fn apply(&self, x: &Atom) -> Result<&Atom> {
        self.get(x).ok_or_else(|| Error::domain(format!("{x} not in domain {}", self.domain)))
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &SetMap) -> Result<SetMap> {
        if f.codomain != self.domain {
            return Err(Error::composition(format!("codomain {} does not match domain {}", f.codomain, self.domain)));
        }
        let images = f.images.iter().map(|y| self.get(y).cloned().expect("checked domain")).collect();
        Ok(SetMap::new_unchecked(f.domain.clone(), self.codomain.clone(), images))
    }

    pub fn preimage(&self, s: &Atom) -> FinSet {
        FinSet(self.pairs().filter(|(_, y)| *y == s).map(|(x, _)| x.clone()).collect())
    }

    /// Like [`SetMap::preimage`], but `s` must lie in the codomain.
    pub fn try_preimage(&self, s: &Atom) -> Result<FinSet> {
        if !self.codomain.contains(s) {
            return Err(Error::domain(format!("{s} not in codomain {}", self.codomain)));
        }
        Ok(self.preimage(s))
    }

    /// The ordinal `k = |f⁻¹(s)|` with the monotone injection `k → domain` onto the preimage.
    pub fn pullback_fiber(&self, s: &Atom) -> Result<(Ordinal, SetMap)> {
        let pre = self.try_preimage(s)?;
        let k = Ordinal(pre.len());
        let inj = SetMap::new_unchecked(k.set(), self.domain.clone(), pre.0);
        Ok((k, inj))
    }

    pub fn image(&self) -> FinSet {
        FinSet::new(self.images.iter().cloned())
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.domain.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.codomain.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.is_injective()
    }

    pub fn is_monotone(&self) -> bool {
        self.images.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.images == self.domain.0
    }

    pub fn inverse(&self) -> Result<SetMap> {
        if !self.is_bijective() {
            return Err(Error::domain(format!("{self} is not a bijection")));
        }
        let pairs = self.pairs().map(|(x, y)| (y.clone(), x.clone()));
        SetMap::from_pairs(self.codomain.clone(), self.domain.clone(), pairs)
    }

    /// Restriction to `sub ⊆ domain`, landing in `codomain`.
    pub fn restrict(&self, sub: &FinSet, codomain: &FinSet) -> Result<SetMap> {
        let images = sub.iter().map(|x| self.apply(x).cloned()).collect::<Result<Vec<_>>>()?;
        SetMap::new(sub.clone(), codomain.clone(), images)
    }

    /// Cycle notation for a permutation of a set, e.g. `(1 2)(3 4)`; `id` for the identity.
    pub fn cycle_notation(&self) -> Option<String> {
        if self.domain != self.codomain || !self.is_bijective() {
            return None;
        }
        let mut seen = vec![false; self.domain.len()];
        let mut out = String::new();
        for (i, start) in self.domain.iter().enumerate() {
            if seen[i] || self.images[i] == *start {
                continue;
            }
            let mut cycle = vec![start.clone()];
            seen[i] = true;
            let mut cur = self.images[i].clone();
            while cur != *start {
                let j = self.domain.position(&cur).expect("bijection");
                seen[j] = true;
                cycle.push(cur.clone());
                cur = self.images[j].clone();
            }
            out.push_str(&format!("({})", cycle.iter().join(" ")));
        }
        Some(if out.is_empty() { "id".to_string() } else { out })
    }
}

impl fmt::Display for SetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.pairs().map(|(x, y)| format!("{x}↦{y}")).join(", ");
        write!(f, "[{body}]")
    }
}

impl fmt::Debug for SetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} → {}", self, self.domain, self.codomain)
    }
}

/// The unique monotone bijection from `set` onto the ordinal of its size.
pub fn canonical_order_iso(set: &FinSet) -> SetMap {
    let n = set.len();
    SetMap::new_unchecked(set.clone(), FinSet::ordinal(n), (1..=n).map(Atom::num).collect())
}

/// For `h = g ∘ f` and `r`, the restriction `h⁻¹(r) → g⁻¹(r)` of `f`.
pub fn induced_on_preimages(f: &SetMap, g: &SetMap, r: &Atom) -> Result<SetMap> {
    let h = g.compose(f)?;
    if !g.codomain.contains(r) {
        return Err(Error::domain(format!("{r} not in {}", g.codomain)));
    }
    f.restrict(&h.preimage(r), &g.preimage(r))
}

/// Thin version of [`induced_on_preimages`]: the map between pullback ordinals.
pub fn induced_on_pullbacks(f: &SetMap, g: &SetMap, r: &Atom) -> Result<SetMap> {
    let thick = induced_on_preimages(f, g, r)?;
    let src = canonical_order_iso(thick.domain());
    let tgt = canonical_order_iso(thick.codomain());
    tgt.compose(&thick)?.compose(&src.inverse()?)
}

/// The element of the pullback ordinal `g⁻¹(r)` corresponding to `s`.
pub fn pullback_index(g: &SetMap, s: &Atom) -> Result<Atom> {
    let r = g.apply(s)?;
    let pre = g.preimage(r);
    Ok(Atom::num(pre.position(s).expect("s lies over its image") + 1))
}

/// Inverse of [`pullback_index`]: the `i`-th element of `g⁻¹(r)`.
pub fn pullback_element(g: &SetMap, r: &Atom, i: &Atom) -> Result<Atom> {
    let pre = g.preimage(r);
    i.as_num()
        .filter(|&k| k >= 1 && k <= pre.len())
        .map(|k| pre.atoms()[k - 1].clone())
        .ok_or_else(|| Error::domain(format!("{i} is not an index of the fiber over {r}")))
}

pub fn all_maps(domain: &FinSet, codomain: &FinSet) -> Vec<SetMap> {
    if domain.is_empty() {
        return vec![SetMap::new_unchecked(domain.clone(), codomain.clone(), Vec::new())];
    }
    std::iter::repeat_n(codomain.atoms(), domain.len())
        .multi_cartesian_product()
        .map(|imgs| SetMap::new_unchecked(domain.clone(), codomain.clone(), imgs.into_iter().cloned().collect()))
        .collect()
}

pub fn monotone_maps(domain: &FinSet, codomain: &FinSet) -> Vec<SetMap> {
    all_maps(domain, codomain).into_iter().filter(SetMap::is_monotone).collect()
}

pub fn bijections(domain: &FinSet, codomain: &FinSet) -> Vec<SetMap> {
    if domain.len() != codomain.len() {
        return Vec::new();
    }
    codomain
        .atoms()
        .iter()
        .cloned()
        .permutations(codomain.len())
        .map(|imgs| SetMap::new_unchecked(domain.clone(), codomain.clone(), imgs))
        .collect()
}

pub fn permutations(set: &FinSet) -> Vec<SetMap> {
    bijections(set, set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_odd() != rhs.is_odd())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, Mul::mul)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Sign of the permutation of `0..n` given as the sequence of images.
pub fn permutation_sign(perm: &[usize]) -> Sign {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        odd ^= len % 2 == 0;
    }
    Sign::from_parity(odd)
}

/// Sign of the permutation that sorts `word` (distinct keys).
pub fn sorting_sign<T: Ord>(word: &[T]) -> Sign {
    let order: Vec<usize> = (0..word.len()).sorted_by(|&i, &j| word[i].cmp(&word[j])).collect();
    permutation_sign(&order)
}
