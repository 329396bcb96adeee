//! Pruned level-2 trees: order-preserving surjections `T: m → n`. A morphism
//! `T' → T''` is a commuting square `(ω: m' → m'', ς: n' → n'')` with `ς`
//! order-preserving and `ω` order-preserving on each `T'⁻¹(i)`. The fiber over a
//! leaf `i` is the subtree spanned by the leaves `ω⁻¹(i)`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::finset::{Atom, FinSet, SetMap};
use crate::opcat::{Lift, Mode, OperadicCategory};

/// `map[k]` is the (1-based) vertex under leaf `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoTree {
    pub levels: usize,
    pub map: Vec<usize>,
}

impl TwoTree {
    pub fn new(levels: usize, map: Vec<usize>) -> Result<TwoTree> {
        let monotone = map.windows(2).all(|w| w[0] <= w[1]);
        let onto = (1..=levels).all(|v| map.contains(&v));
        if map.iter().any(|&v| v == 0 || v > levels) || !monotone || !onto {
            return Err(Error::domain(format!("{map:?} is not an order-preserving surjection onto [{levels}]")));
        }
        Ok(TwoTree { levels, map })
    }

    pub fn leaves(&self) -> usize {
        self.map.len()
    }

    fn leaves_over(&self, v: usize) -> Vec<usize> {
        (1..=self.leaves()).filter(|&l| self.map[l - 1] == v).collect()
    }
}

impl fmt::Display for TwoTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2-tree {}→{} [{}]", self.leaves(), self.levels, self.map.iter().join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeMor {
    pub source: TwoTree,
    pub target: TwoTree,
    /// Leaf map, 1-based.
    pub omega: Vec<usize>,
    /// Vertex map, 1-based.
    pub varsigma: Vec<usize>,
}

impl fmt::Display for TreeMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) → ({}) ω=[{}] ς=[{}]",
            self.source,
            self.target,
            self.omega.iter().join(","),
            self.varsigma.iter().join(",")
        )
    }
}

impl TreeMor {
    pub fn new(source: TwoTree, target: TwoTree, omega: Vec<usize>, varsigma: Vec<usize>) -> Result<TreeMor> {
        let ok_sizes = omega.len() == source.leaves()
            && varsigma.len() == source.levels
            && omega.iter().all(|&x| x >= 1 && x <= target.leaves())
            && varsigma.iter().all(|&x| x >= 1 && x <= target.levels);
        if !ok_sizes {
            return Err(Error::domain("leaf or vertex map out of range"));
        }
        let m = TreeMor { source, target, omega, varsigma };
        if !m.is_valid() {
            return Err(Error::domain(format!("{m} is not a morphism of 2-trees")));
        }
        Ok(m)
    }

    fn is_valid(&self) -> bool {
        let commutes = (0..self.source.leaves())
            .all(|l| self.target.map[self.omega[l] - 1] == self.varsigma[self.source.map[l] - 1]);
        let mono = self.varsigma.windows(2).all(|w| w[0] <= w[1]);
        let fiberwise = (1..=self.source.levels)
            .all(|v| self.source.leaves_over(v).windows(2).all(|w| self.omega[w[0] - 1] <= self.omega[w[1] - 1]));
        commutes && mono && fiberwise
    }
}

/// Pruned two-level trees with at most `max_leaves` leaves.
#[derive(Clone, Debug)]
pub struct Omega2 {
    pub max_leaves: usize,
}

impl Omega2 {
    /// The tree `4 → 2`, `1,2 ↦ 1`, `3,4 ↦ 2`, and the permutation `(1 2)(3 4)` with no lift.
    pub fn no_lift_witness() -> (TwoTree, SetMap) {
        let t = TwoTree::new(2, vec![1, 1, 2, 2]).expect("valid tree");
        let sigma = SetMap::table(&[("1", "2"), ("2", "1"), ("3", "4"), ("4", "3")], &["1", "2", "3", "4"])
            .expect("valid permutation");
        (t, sigma)
    }

    /// The morphism `F: T → S` with `S: 2 → 1` and `ω = 1↦1, 2↦2, 3↦1, 4↦2`;
    /// `ω` is not order-preserving, so the category is not ordered.
    pub fn not_ordered_witness() -> TreeMor {
        let (t, _) = Self::no_lift_witness();
        let s = TwoTree::new(1, vec![1, 1]).expect("valid tree");
        TreeMor::new(t, s, vec![1, 2, 1, 2], vec![1, 1]).expect("valid morphism")
    }
}

fn monotone_seqs(len: usize, max: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if max == 0 {
        return Vec::new();
    }
    (1..=max).combinations_with_replacement(len).collect()
}

fn positions(of: &[usize], within: &[usize]) -> Vec<usize> {
    of.iter().map(|x| within.iter().position(|y| y == x).expect("subset") + 1).collect()
}

impl OperadicCategory for Omega2 {
    type Obj = TwoTree;
    type Mor = TreeMor;

    fn name(&self) -> String {
        "omega2".into()
    }

    fn mode(&self) -> Mode {
        Mode::Thin
    }

    fn objects(&self) -> Vec<TwoTree> {
        let mut out = Vec::new();
        for m in 0..=self.max_leaves {
            for n in 0..=m {
                out.extend(monotone_seqs(m, n).into_iter().filter_map(|map| TwoTree::new(n, map).ok()));
            }
        }
        out
    }

    fn hom(&self, s: &TwoTree, t: &TwoTree) -> Vec<TreeMor> {
        let mut out = Vec::new();
        for varsigma in monotone_seqs(s.levels, t.levels) {
            let choices: Vec<Vec<usize>> = s.map.iter().map(|&v| t.leaves_over(varsigma[v - 1])).collect();
            if choices.iter().any(Vec::is_empty) {
                continue;
            }
            let omegas: Vec<Vec<usize>> = if choices.is_empty() {
                vec![Vec::new()]
            } else {
                choices.into_iter().multi_cartesian_product().collect()
            };
            for omega in omegas {
                let m = TreeMor { source: s.clone(), target: t.clone(), omega, varsigma: varsigma.clone() };
                if m.is_valid() {
                    out.push(m);
                }
            }
        }
        out
    }

    fn source(&self, f: &TreeMor) -> TwoTree {
        f.source.clone()
    }

    fn target(&self, f: &TreeMor) -> TwoTree {
        f.target.clone()
    }

    fn identity(&self, s: &TwoTree) -> TreeMor {
        TreeMor {
            source: s.clone(),
            target: s.clone(),
            omega: (1..=s.leaves()).collect(),
            varsigma: (1..=s.levels).collect(),
        }
    }

    fn compose(&self, g: &TreeMor, f: &TreeMor) -> Result<TreeMor> {
        if f.target != g.source {
            return Err(Error::composition(format!("{} ≠ {}", f.target, g.source)));
        }
        Ok(TreeMor {
            source: f.source.clone(),
            target: g.target.clone(),
            omega: f.omega.iter().map(|&x| g.omega[x - 1]).collect(),
            varsigma: f.varsigma.iter().map(|&x| g.varsigma[x - 1]).collect(),
        })
    }

    fn cardinality(&self, s: &TwoTree) -> FinSet {
        FinSet::ordinal(s.leaves())
    }

    fn card_map(&self, f: &TreeMor) -> SetMap {
        SetMap::new(
            FinSet::ordinal(f.source.leaves()),
            FinSet::ordinal(f.target.leaves()),
            f.omega.iter().map(|&x| Atom::num(x)).collect(),
        )
        .expect("leaf map in range")
    }

    fn fiber(&self, f: &TreeMor, s: &Atom) -> Result<TwoTree> {
        let i = s
            .as_num()
            .filter(|&i| i >= 1 && i <= f.target.leaves())
            .ok_or_else(|| Error::domain(format!("{s} is not a leaf of {}", f.target)))?;
        let leaves: Vec<usize> = (1..=f.source.leaves()).filter(|&l| f.omega[l - 1] == i).collect();
        let over: Vec<usize> = leaves.iter().map(|&l| f.source.map[l - 1]).collect();
        let verts: Vec<usize> = over.iter().copied().dedup().collect();
        Ok(TwoTree { levels: verts.len(), map: positions(&over, &verts) })
    }

    fn induced(&self, f: &TreeMor, g: &TreeMor, r: &Atom) -> Result<TreeMor> {
        let h = self.compose(g, f)?;
        let src = self.fiber(&h, r)?;
        let tgt = self.fiber(g, r)?;
        let i = r.as_num().expect("checked by fiber");
        let h_leaves: Vec<usize> = (1..=h.source.leaves()).filter(|&l| h.omega[l - 1] == i).collect();
        let g_leaves: Vec<usize> = (1..=g.source.leaves()).filter(|&l| g.omega[l - 1] == i).collect();
        let h_verts: Vec<usize> = h_leaves.iter().map(|&l| h.source.map[l - 1]).dedup().collect();
        let g_verts: Vec<usize> = g_leaves.iter().map(|&l| g.source.map[l - 1]).dedup().collect();
        let omega_img: Vec<usize> = h_leaves.iter().map(|&l| f.omega[l - 1]).collect();
        let vs_img: Vec<usize> = h_verts.iter().map(|&u| f.varsigma[u - 1]).collect();
        Ok(TreeMor {
            source: src,
            target: tgt,
            omega: positions(&omega_img, &g_leaves),
            varsigma: positions(&vs_img, &g_verts),
        })
    }

    /// Searches for some lift; there is none when `σ` reverses leaves over a vertex.
    fn lift(&self, sigma: &SetMap, s: &TwoTree) -> Result<Lift<TwoTree, TreeMor>> {
        let m = s.leaves();
        if sigma.domain() != &FinSet::ordinal(m) || sigma.codomain() != sigma.domain() || !sigma.is_bijective() {
            return Err(Error::NoLift(format!("{sigma} is not a permutation of [{m}]")));
        }
        let omega: Vec<usize> = sigma.images().iter().map(|a| a.as_num().expect("ordinal")).collect();
        let fiberwise = (1..=s.levels).all(|v| s.leaves_over(v).windows(2).all(|w| omega[w[0] - 1] <= omega[w[1] - 1]));
        if !fiberwise {
            return Err(Error::NoLift(format!(
                "{} reverses leaves over a vertex of {s}",
                sigma.cycle_notation().unwrap_or_default()
            )));
        }
        let mut inv = vec![0; m];
        for (l, &x) in omega.iter().enumerate() {
            inv[x - 1] = l + 1;
        }
        let mut candidates: Vec<(usize, Vec<usize>)> = vec![(s.levels, (1..=s.levels).collect())];
        for n in 0..=s.levels {
            candidates.extend(monotone_seqs(s.levels, n).into_iter().map(|vs| (n, vs)));
        }
        for (levels, varsigma) in candidates {
            let map: Vec<usize> = inv.iter().map(|&l| varsigma[s.map[l - 1] - 1]).collect();
            let Ok(t) = TwoTree::new(levels, map) else { continue };
            if let Ok(f) = TreeMor::new(s.clone(), t.clone(), omega.clone(), varsigma) {
                return Ok(Lift { target: t, morphism: f });
            }
        }
        Err(Error::NoLift(format!("no 2-tree receives {s} along {sigma}")))
    }

    fn lift_probes(&self) -> Vec<(TwoTree, SetMap)> {
        vec![Self::no_lift_witness()]
    }
}
