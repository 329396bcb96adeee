//! Concrete operads: the constant operad ζ, its odd version det(Edg) on graphs,
//! an associative toy operad on finite sets, and a sign-flipping wrapper used
//! as a negative control.

use std::marker::PhantomData;

use itertools::Itertools;

use super::{koszul, Base, Operad, Space, Vector};
use crate::error::{Error, Result};
use crate::finset::{permutations, sorting_sign, Atom, FinSet, SetMap, Sign};
use crate::graphs::{mu_sign, GrCategory, GraphMor};
use crate::opcat::{fiber_elem, fiber_elem_inverse, ComponentId, Enumeration, OperadicCategory};
use crate::report::{AxiomReport, Check, Witness};

/// The constant operad: every component is the unit, every map is forced.
#[derive(Clone, Debug, Default)]
pub struct Zeta<C: ?Sized>(PhantomData<fn(&C)>);

pub fn constant_zeta<C: OperadicCategory + ?Sized>() -> Zeta<C> {
    Zeta(PhantomData)
}

impl<C: OperadicCategory + ?Sized> Operad<C> for Zeta<C> {
    fn name(&self) -> String {
        "zeta".into()
    }

    fn base(&self) -> Base {
        Base::Set
    }

    fn component(&self, _: &C, _: &C::Obj) -> Result<Space> {
        Ok(Space::unit())
    }

    fn mu(&self, _: &C, _: &C::Mor, _: usize, _: &[usize]) -> Result<Vector> {
        Ok(Vector::basis(0))
    }

    fn action(&self, _: &C, _: &C::Mor, _: usize) -> Result<Vector> {
        Ok(Vector::basis(0))
    }

    fn unit(&self, _: &C, _: &ComponentId) -> Option<Vector> {
        Some(Vector::basis(0))
    }
}

/// `ζ̃(Γ) = det(Edg(Γ))`: a line in degree `|Edg(Γ)|`, with `μ` the sign of
/// the edge reordering.
#[derive(Clone, Copy, Debug, Default)]
pub struct OddZeta;

pub fn odd_zeta() -> OddZeta {
    OddZeta
}

/// The basis label of `det(Edg(Γ))`: the wedge of the edges in order.
fn det_label(edges: &[(Atom, Atom)]) -> String {
    if edges.is_empty() {
        return "1".into();
    }
    edges.iter().map(|(a, b)| format!("{a}~{b}")).join("∧")
}

pub(crate) fn det_line(edges: &[(Atom, Atom)]) -> Space {
    Space::line(edges.len() as u32, &det_label(edges))
}

fn signed_one(s: Sign) -> Vector {
    Vector::basis(0).signed(s)
}

impl Operad<GrCategory> for OddZeta {
    fn name(&self) -> String {
        "odd-zeta".into()
    }

    fn base(&self) -> Base {
        Base::Line
    }

    fn component(&self, _: &GrCategory, t: &crate::graphs::Graph) -> Result<Space> {
        Ok(det_line(&t.edges()))
    }

    fn mu(&self, _: &GrCategory, f: &GraphMor, _: usize, _: &[usize]) -> Result<Vector> {
        Ok(signed_one(mu_sign(f)))
    }

    fn action(&self, _: &GrCategory, lift: &GraphMor, _: usize) -> Result<Vector> {
        Ok(signed_one(mu_sign(lift)))
    }

    /// The terminal corollas have no edges: `η_c = +1`.
    fn unit(&self, _: &GrCategory, _: &ComponentId) -> Option<Vector> {
        Some(Vector::basis(0))
    }
}

/// The associative operad on finite-set categories: `P(T)` has a basis of
/// linear orders of `|T|`, and `μ_f` concatenates the fiber orders block by
/// block along the order of `|T|`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AssocToy;

fn orders(set: &FinSet) -> Vec<Vec<Atom>> {
    if set.is_empty() {
        return vec![Vec::new()];
    }
    permutations(set).iter().map(|p| p.images().to_vec()).collect()
}

fn order_label(w: &[Atom]) -> String {
    format!("[{}]", w.iter().join(" "))
}

impl<C> Operad<C> for AssocToy
where
    C: OperadicCategory<Obj = FinSet, Mor = SetMap> + ?Sized,
{
    fn name(&self) -> String {
        "assoc".into()
    }

    fn base(&self) -> Base {
        Base::Set
    }

    fn component(&self, cat: &C, t: &FinSet) -> Result<Space> {
        Ok(Space::even(orders(&cat.cardinality(t)).iter().map(|w| order_label(w)).collect()))
    }

    fn mu(&self, cat: &C, f: &SetMap, x: usize, fibers: &[usize]) -> Result<Vector> {
        let (s, t) = (cat.cardinality(&cat.source(f)), cat.cardinality(&cat.target(f)));
        let card = cat.card_map(f);
        let outer = orders(&t).into_iter().nth(x).ok_or_else(|| Error::domain(format!("no order {x} on {t}")))?;
        let mut word = Vec::with_capacity(s.len());
        for a in &outer {
            let ai = t.position(a).expect("order of |T|");
            let fiber = cat.cardinality(&cat.fiber(f, a)?);
            let inner = orders(&fiber)
                .into_iter()
                .nth(fibers[ai])
                .ok_or_else(|| Error::domain(format!("no order {} on {fiber}", fibers[ai])))?;
            for e in &inner {
                word.push(fiber_elem_inverse(cat.mode(), &card, a, e)?);
            }
        }
        let pos = orders(&s).iter().position(|w| *w == word).ok_or_else(|| Error::domain("not an order"))?;
        Ok(Vector::basis(pos))
    }

    /// A lift `σ̃: S → T` pulls an order of `|T|` back along `σ`.
    fn action(&self, cat: &C, lift: &SetMap, x: usize) -> Result<Vector> {
        let sigma = cat.card_map(lift);
        let inv = sigma.inverse()?;
        let w = orders(sigma.codomain()).into_iter().nth(x).ok_or_else(|| Error::domain("no such order"))?;
        let pulled = w.iter().map(|a| inv.apply(a).cloned()).collect::<Result<Vec<_>>>()?;
        let pos = orders(sigma.domain()).iter().position(|v| *v == pulled).expect("bijection");
        Ok(Vector::basis(pos))
    }

    fn unit(&self, _: &C, _: &ComponentId) -> Option<Vector> {
        Some(Vector::basis(0))
    }
}

/// Wraps an operad and negates `μ_f` for a single morphism `f`.
#[derive(Clone, Debug)]
pub struct FlippedSign<P, M> {
    pub inner: P,
    pub flipped: M,
}

impl<C, P> Operad<C> for FlippedSign<P, C::Mor>
where
    C: OperadicCategory + ?Sized,
    P: Operad<C>,
{
    fn name(&self) -> String {
        format!("{} (μ negated at {})", self.inner.name(), self.flipped)
    }

    fn base(&self) -> Base {
        self.inner.base()
    }

    fn component(&self, cat: &C, t: &C::Obj) -> Result<Space> {
        self.inner.component(cat, t)
    }

    fn mu(&self, cat: &C, f: &C::Mor, x: usize, fibers: &[usize]) -> Result<Vector> {
        let v = self.inner.mu(cat, f, x, fibers)?;
        Ok(if *f == self.flipped { v.signed(Sign::Minus) } else { v })
    }

    fn action(&self, cat: &C, lift: &C::Mor, x: usize) -> Result<Vector> {
        self.inner.action(cat, lift, x)
    }

    fn unit(&self, cat: &C, c: &ComponentId) -> Option<Vector> {
        self.inner.unit(cat, c)
    }
}

/// For every enumerated composable pair `f: S → T`, `g: T → R` with
/// `h = g f`, the sign of odd ζ along the two paths of the associativity
/// square agree, and both equal an independent oracle: the parity of sorting
/// all edges (of `R`, of each `g⁻¹(r)`, of each fiber of each `f_r`, in that
/// order, carried into `S`) into the edge order of `S`.
pub fn check_odd_zeta_coherence(cat: &GrCategory) -> AxiomReport {
    check_odd_zeta_coherence_on(cat, &Enumeration::new(cat))
}

pub fn check_odd_zeta_coherence_on(cat: &GrCategory, en: &Enumeration<GrCategory>) -> AxiomReport {
    let mut report = AxiomReport::new("odd-zeta-coherence", cat.name());
    let mut paths = Check::new("two-path-agreement");
    let mut oracle = Check::new("parity-oracle");
    for (_, j, f) in en.morphisms() {
        for (_, g) in &en.out[j] {
            let w = || Witness::new().with("f", f).with("g", g);
            match triangle_signs(cat, f, g) {
                Ok((top, bottom, brute)) => {
                    paths.record(top == bottom, || w().with("top", top).with("bottom", bottom));
                    oracle.record(top == brute, || w().with("top", top).with("oracle", brute));
                }
                Err(e) => paths.fail_with(w().with("error", e)),
            }
        }
    }
    report.push(paths.finish());
    report.push(oracle.finish());
    report
}

/// `(top, bottom, oracle)` signs for the pair.
fn triangle_signs(cat: &GrCategory, f: &GraphMor, g: &GraphMor) -> Result<(Sign, Sign, Sign)> {
    let mode = cat.mode();
    let h = cat.compose(g, f)?;
    let s_edges = f.source.edges();
    let rank = |flag: &Atom| -> Result<usize> {
        s_edges
            .iter()
            .position(|(x, y)| x == flag || y == flag)
            .ok_or_else(|| Error::domain(format!("{flag} is not on an edge of the source")))
    };
    let r_card = cat.cardinality(&g.target);
    let mut degrees = vec![g.target.edges().len() as u32];
    // Oracle word: every factor's edges, named by the source flag they become.
    let mut word = Vec::new();
    for (x, _) in g.target.edges() {
        word.push(rank(h.flag_map.apply(&x)?)?);
    }
    let mut induced = Vec::new();
    for r in r_card.iter() {
        let gr = cat.fiber(g, r)?;
        degrees.push(gr.edges().len() as u32);
        for (x, _) in gr.edges() {
            word.push(rank(f.flag_map.apply(&x)?)?);
        }
        induced.push(cat.induced(f, g, r)?);
    }
    let mut starts = Vec::new();
    for fr in &induced {
        starts.push(degrees.len());
        for a in fr.target.vertices().iter() {
            let z = cat.fiber(fr, a)?;
            degrees.push(z.edges().len() as u32);
            for (x, _) in z.edges() {
                word.push(rank(&x)?);
            }
        }
    }
    starts.push(degrees.len());
    let k = r_card.len();

    let mut top_order = vec![0];
    for ri in 0..k {
        top_order.push(1 + ri);
        top_order.extend(starts[ri]..starts[ri + 1]);
    }
    let mut top = mu_sign(&h) * koszul(&degrees, &top_order);
    for fr in &induced {
        top = top * mu_sign(fr);
    }

    let g_card = cat.card_map(g);
    let mut bottom_order: Vec<usize> = (0..=k).collect();
    for t in f.target.vertices().iter() {
        let r = g_card.apply(t)?;
        let ri = r_card.position(r).expect("image");
        let a = fiber_elem(mode, &g_card, t)?;
        let ai = induced[ri].target.vertices().position(&a).expect("fiber vertex");
        bottom_order.push(starts[ri] + ai);
    }
    let bottom = mu_sign(g) * mu_sign(f) * koszul(&degrees, &bottom_order);
    Ok((top, bottom, sorting_sign(&word)))
}
