//! Algebras over operads, the endomorphism modular algebra of a vector space
//! with a pairing, and the modular operations derived from an algebra over ζ
//! on graphs.

use std::sync::Arc;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::{basis_tuples, koszul, mu_vec, Operad, Space, Vector, Q};
use crate::equivalence::{
    extend_category, restrict_category, thick_to_erc, thick_universe, Corner, Extension, Restricted,
};
use crate::error::{Error, Result};
use crate::finset::{Atom, FinSet, SetMap};
use crate::graphs::{parse_label_set, GlobalLabeledGraph, Graph, GraphMor, GraphV};
use crate::opcat::{fiber_elem, source_and_target, ComponentId, Enumeration, Mode, OperadicCategory};
use crate::report::{AxiomReport, Check, Witness};

/// An algebra `A` over an operad `P` on `C`.
pub trait Algebra<C: OperadicCategory + ?Sized> {
    fn name(&self) -> String;
    fn carrier(&self, cat: &C, c: &ComponentId) -> Result<Space>;
    /// `α_T: P(T) ⊗ A_{s(T)} → A_{t(T)}` on basis elements, inputs in the
    /// order of the source list.
    fn action(&self, cat: &C, t: &C::Obj, p: usize, inputs: &[usize]) -> Result<Vector>;
}

/// `α_T` extended multilinearly in the inputs.
pub fn action_vec<C, A>(alg: &A, cat: &C, t: &C::Obj, p: &Vector, inputs: &[Vector]) -> Result<Vector>
where
    C: OperadicCategory + ?Sized,
    A: Algebra<C> + ?Sized,
{
    let mut factors = vec![p.clone()];
    factors.extend_from_slice(inputs);
    let mut out = Vector::zero();
    for (c, idx) in super::expand(&factors) {
        out.add_scaled(&alg.action(cat, t, idx[0], &idx[1..])?, &c);
    }
    Ok(out)
}

fn carriers<C, A>(alg: &A, cat: &C, ids: &[ComponentId]) -> Result<Vec<Space>>
where
    C: OperadicCategory + ?Sized,
    A: Algebra<C> + ?Sized,
{
    ids.iter().map(|c| alg.carrier(cat, c)).collect()
}

fn dims(spaces: &[Space]) -> Vec<usize> {
    spaces.iter().map(Space::dim).collect()
}

/// Checks associativity, compatibility with the cloven action, and the unit
/// law on the category's bounded enumeration.
pub fn check_algebra<C, P, A>(cat: &C, op: &P, alg: &A) -> AxiomReport
where
    C: OperadicCategory + ?Sized,
    P: Operad<C> + ?Sized,
    A: Algebra<C> + ?Sized,
{
    check_algebra_on(cat, op, alg, &Enumeration::new(cat))
}

pub fn check_algebra_on<C, P, A>(cat: &C, op: &P, alg: &A, en: &Enumeration<C>) -> AxiomReport
where
    C: OperadicCategory + ?Sized,
    P: Operad<C> + ?Sized,
    A: Algebra<C> + ?Sized,
{
    let mut report = AxiomReport::new("algebra", format!("{} over {} on {}", alg.name(), op.name(), cat.name()));
    let mut assoc = Check::new("associativity");
    let mut cloven = Check::new("cloven-compatibility");
    let mut unit = Check::new("unit");
    for (_, _, f) in en.morphisms() {
        if let Err(e) = associativity(cat, op, alg, f, &mut assoc) {
            assoc.fail_with(Witness::new().with("f", f).with("error", e));
        }
    }
    let mut components = Vec::new();
    for s in &en.objects {
        if let Err(e) = cloven_compatibility(cat, op, alg, s, &mut cloven) {
            cloven.fail_with(Witness::new().with("object", s).with("error", e));
        }
        if let Some(c) = cat.component(s) {
            if !components.contains(&c) {
                components.push(c);
            }
        }
    }
    for c in &components {
        if let Err(e) = unit_law(cat, op, alg, c, &mut unit) {
            unit.fail_with(Witness::new().with("component", c).with("error", e));
        }
    }
    for check in [assoc, cloven, unit] {
        report.push(check.finish());
    }
    report
}

/// `α_T(1 ⊗ ⨂_a α_{F_a}) = α_S(μ_f ⊗ 1)` up to the regrouping of factors.
fn associativity<C, P, A>(cat: &C, op: &P, alg: &A, f: &C::Mor, check: &mut Check) -> Result<()>
where
    C: OperadicCategory + ?Sized,
    P: Operad<C> + ?Sized,
    A: Algebra<C> + ?Sized,
{
    let (s, t) = (cat.source(f), cat.target(f));
    let f_card = cat.card_map(f);
    let t_card = cat.cardinality(&t);
    let (s_src, s_tgt) = source_and_target(cat, &s)?;
    let (t_src, t_tgt) = source_and_target(cat, &t)?;
    if s_tgt != t_tgt {
        check.record(false, || Witness::new().with("f", f).with("reason", "t(S) ≠ t(T)"));
        return Ok(());
    }
    // Factor layout: P(T), then for each a: P(F_a), A_{s(F_a)}.
    let mut spaces = vec![op.component(cat, &t)?];
    let mut q_pos = Vec::new();
    let mut u_pos: Vec<Vec<usize>> = Vec::new();
    let mut ids: Vec<Option<ComponentId>> = vec![None];
    for (ai, a) in t_card.iter().enumerate() {
        let fa = cat.fiber(f, a)?;
        let (fa_src, fa_tgt) = source_and_target(cat, &fa)?;
        if fa_tgt != t_src[ai] {
            check.record(false, || Witness::new().with("f", f).with("a", a).with("reason", "t(F_a) ≠ s(T)_a"));
            return Ok(());
        }
        q_pos.push(spaces.len());
        spaces.push(op.component(cat, &fa)?);
        ids.push(None);
        u_pos.push((spaces.len()..spaces.len() + fa_src.len()).collect());
        spaces.extend(carriers(alg, cat, &fa_src)?);
        ids.extend(fa_src.into_iter().map(Some));
    }
    // Bottom path order: P(T), the P(F_a), then the inputs in |S| order.
    let mut bottom = vec![0];
    bottom.extend(&q_pos);
    for x in cat.cardinality(&s).iter() {
        let a = f_card.apply(x)?;
        let ai = t_card.position(a).expect("image in |T|");
        let e = fiber_elem(cat.mode(), &f_card, x)?;
        let ei = cat.cardinality(&cat.fiber(f, a)?).position(&e).ok_or_else(|| Error::domain("fiber element"))?;
        bottom.push(u_pos[ai][ei]);
    }
    let expected: Vec<&ComponentId> = bottom[1 + q_pos.len()..].iter().filter_map(|&p| ids[p].as_ref()).collect();
    if expected != s_src.iter().collect::<Vec<_>>() {
        check.record(false, || Witness::new().with("f", f).with("reason", "s(S) ≠ ⨂ s(F_a)"));
        return Ok(());
    }

    for idx in basis_tuples(&dims(&spaces)) {
        let deg: Vec<u32> = spaces.iter().zip(&idx).map(|(sp, &i)| sp.degree(i)).collect();
        let mut vs = Vec::with_capacity(q_pos.len());
        for (ai, a) in t_card.iter().enumerate() {
            let fa = cat.fiber(f, a)?;
            let ins: Vec<usize> = u_pos[ai].iter().map(|&p| idx[p]).collect();
            vs.push(alg.action(cat, &fa, idx[q_pos[ai]], &ins)?);
        }
        let top = action_vec(alg, cat, &t, &Vector::basis(idx[0]), &vs)?;

        let qs: Vec<Vector> = q_pos.iter().map(|&p| Vector::basis(idx[p])).collect();
        let m = mu_vec(op, cat, f, &Vector::basis(idx[0]), &qs)?;
        let ins: Vec<Vector> = bottom[1 + q_pos.len()..].iter().map(|&p| Vector::basis(idx[p])).collect();
        let low = action_vec(alg, cat, &s, &m, &ins)?.signed(koszul(&deg, &bottom));
        check.record_ranked(
            top == low,
            || format!("{f}").len(),
            || {
                Witness::new()
                    .with("f", f)
                    .with("input", format!("{idx:?}"))
                    .with("α_T(1⊗α_F)", &top)
                    .with("α_S(μ_f⊗1)", &low)
            },
        );
    }
    Ok(())
}

/// `α_S(P(σ) ⊗ A(σ)) = α_T` for lifts `σ̃: S → T`.
fn cloven_compatibility<C, P, A>(cat: &C, op: &P, alg: &A, s: &C::Obj, check: &mut Check) -> Result<()>
where
    C: OperadicCategory + ?Sized,
    P: Operad<C> + ?Sized,
    A: Algebra<C> + ?Sized,
{
    let (s_src, _) = source_and_target(cat, s)?;
    let s_card = cat.cardinality(s);
    for sigma in cat.lift_tests(s) {
        let Ok(l) = cat.lift(&sigma, s) else { continue };
        let t = l.target.clone();
        let (t_src, _) = source_and_target(cat, &t)?;
        let t_card = cat.cardinality(&t);
        let w = || Witness::new().with("object", s).with("sigma", &sigma);
        // order[k]: position in s(T) of the input feeding the k-th slot of s(S).
        let order = s_card
            .iter()
            .map(|x| t_card.position(sigma.apply(x)?).ok_or_else(|| Error::domain("σ(x) ∉ |T|")))
            .collect::<Result<Vec<_>>>()?;
        let permuted: Vec<&ComponentId> = order.iter().map(|&p| &t_src[p]).collect();
        if permuted != s_src.iter().collect::<Vec<_>>() {
            check.record(false, || w().with("reason", "s(S) ≠ σ*s(T)"));
            continue;
        }
        let mut spaces = vec![op.component(cat, &t)?];
        spaces.extend(carriers(alg, cat, &t_src)?);
        for idx in basis_tuples(&dims(&spaces)) {
            let deg: Vec<u32> = spaces[1..].iter().zip(&idx[1..]).map(|(sp, &i)| sp.degree(i)).collect();
            let rhs = alg.action(cat, &t, idx[0], &idx[1..])?;
            let p = op.action(cat, &l.morphism, idx[0])?;
            let ins: Vec<Vector> = order.iter().map(|&k| Vector::basis(idx[1 + k])).collect();
            let lhs = action_vec(alg, cat, s, &p, &ins)?.signed(koszul(&deg, &order));
            check.record(lhs == rhs, || w().with("input", format!("{idx:?}")).with("lhs", &lhs).with("rhs", &rhs));
        }
    }
    Ok(())
}

/// `α_{U_c}(η_c ⊗ a) = a`.
fn unit_law<C, P, A>(cat: &C, op: &P, alg: &A, c: &ComponentId, check: &mut Check) -> Result<()>
where
    C: OperadicCategory + ?Sized,
    P: Operad<C> + ?Sized,
    A: Algebra<C> + ?Sized,
{
    let u = cat.terminal(c).ok_or_else(|| Error::config(format!("no chosen terminal for {c}")))?;
    let eta = op.unit(cat, c).ok_or_else(|| Error::config(format!("{} has no unit for {c}", op.name())))?;
    let space = alg.carrier(cat, c)?;
    for i in 0..space.dim() {
        let r = action_vec(alg, cat, &u, &eta, &[Vector::basis(i)])?;
        check.record(r == Vector::basis(i), || {
            Witness::new().with("component", c).with("a", &space.basis[i]).with("result", &r)
        });
    }
    Ok(())
}

/// `A_c = 𝟙` for every component, every action the identity of the unit.
#[derive(Clone, Copy, Debug, Default)]
pub struct TrivialAlgebra;

impl<C: OperadicCategory + ?Sized> Algebra<C> for TrivialAlgebra {
    fn name(&self) -> String {
        "trivial".into()
    }

    fn carrier(&self, _: &C, _: &ComponentId) -> Result<Space> {
        Ok(Space::unit())
    }

    fn action(&self, _: &C, _: &C::Obj, _: usize, _: &[usize]) -> Result<Vector> {
        Ok(Vector::basis(0))
    }
}

/// An exact square matrix used to contract paired flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing(Vec<Vec<Q>>);

impl Pairing {
    /// Checks that the matrix is square, symmetric and invertible.
    #[allow(clippy::needless_range_loop)]
    pub fn new(rows: Vec<Vec<Q>>) -> Result<Pairing> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::config("pairing is not square"));
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::config(format!("pairing is not symmetric at ({i}, {j})")));
                }
            }
        }
        if rank(&rows) < n {
            return Err(Error::config("pairing is singular"));
        }
        Ok(Pairing(rows))
    }

    /// No symmetry or invertibility check; for negative controls.
    pub fn unchecked(rows: Vec<Vec<Q>>) -> Pairing {
        Pairing(rows)
    }

    pub fn identity(n: usize) -> Pairing {
        Pairing((0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect())
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.0[i][j]
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn trace(&self) -> Q {
        (0..self.size()).map(|i| self.0[i][i].clone()).sum()
    }
}

#[allow(clippy::needless_range_loop)]
fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let k = &m[i][c] / &m[r][c];
                for j in 0..cols {
                    let d = &k * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// `M(X)` is the free vector space on functions `X → B`; a graph acts by
/// gluing the labelings at its vertices and contracting each edge `{h, h'}`
/// (`h < h'`) with the pairing `β(ℓh, ℓh')`, legs carrying the free slots.
#[derive(Clone, Debug)]
pub struct EndomorphismModular {
    pub basis: FinSet,
    pub pairing: Pairing,
}

pub fn endomorphism_modular(basis: FinSet, pairing: Pairing) -> Result<EndomorphismModular> {
    if pairing.size() != basis.len() {
        return Err(Error::config(format!("pairing has size {}, basis {basis} has {}", pairing.size(), basis.len())));
    }
    Ok(EndomorphismModular { basis, pairing })
}

impl EndomorphismModular {
    /// The basis of `M(X)`: functions `X → B` in lexicographic order, first
    /// element of `X` most significant. `M(∅)` is the rationals.
    pub fn functions(&self, x: &FinSet) -> Vec<Vec<usize>> {
        basis_tuples(&vec![self.basis.len(); x.len()])
    }

    pub fn index(&self, labeling: &[usize]) -> usize {
        labeling.iter().fold(0, |acc, &i| acc * self.basis.len() + i)
    }

    fn unindex(&self, mut i: usize, len: usize) -> Vec<usize> {
        let n = self.basis.len();
        let mut out = vec![0; len];
        for k in (0..len).rev() {
            out[k] = i % n;
            i /= n;
        }
        out
    }

    pub fn space(&self, x: &FinSet) -> Space {
        let label = |f: &Vec<usize>| {
            if f.is_empty() {
                return "1".to_string();
            }
            x.iter().zip(f).map(|(a, &b)| format!("{a}↦{}", self.basis.atoms()[b])).join(",")
        };
        Space::even(self.functions(x).iter().map(label).collect())
    }

    /// The action of a graph on one labeling per vertex (vertex order).
    pub fn evaluate(&self, g: &GlobalLabeledGraph, inputs: &[usize]) -> Result<Vector> {
        let flags = g.flags();
        let mut label = vec![usize::MAX; flags.len()];
        for (v, &u) in g.vertices().iter().zip(inputs) {
            let at = g.graph.flags_at(v);
            for (h, b) in at.iter().zip(self.unindex(u, at.len())) {
                label[flags.position(h).expect("flag")] = b;
            }
        }
        if inputs.len() != g.vertices().len() {
            return Err(Error::domain(format!("{} inputs for {} vertices", inputs.len(), g.vertices().len())));
        }
        let at = |h: &Atom| label[flags.position(h).expect("flag")];
        let mut coeff = Q::one();
        for (h, k) in g.edges() {
            coeff *= self.pairing.get(at(&h), at(&k));
        }
        let out: Vec<usize> = g.labels.iter().map(|x| at(g.leg_injection.apply(x).expect("label"))).collect();
        Ok(Vector::term(self.index(&out), coeff))
    }
}

impl<C> Algebra<C> for EndomorphismModular
where
    C: OperadicCategory<Obj = Graph, Mor = GraphMor> + ?Sized,
{
    fn name(&self) -> String {
        format!("end({})", self.basis)
    }

    fn carrier(&self, _: &C, c: &ComponentId) -> Result<Space> {
        let x = parse_label_set(c).ok_or_else(|| Error::domain(format!("{c} is not a label set")))?;
        Ok(self.space(&x))
    }

    fn action(&self, _: &C, t: &Graph, _: usize, inputs: &[usize]) -> Result<Vector> {
        self.evaluate(t, inputs)
    }
}

/// Which way an algebra is carried across the equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// From a thick category to its restriction.
    Restrict,
    /// From a thin category to its extension.
    Extend,
}

/// An algebra carried along `R` or `E`. Carriers are unchanged under the
/// identification of components; actions are the original ones, since the
/// source lists of `T` and its image agree in order.
#[derive(Clone, Debug)]
pub struct TransportedAlgebra<A> {
    pub inner: A,
    pub direction: Direction,
}

pub fn transport_algebra<A>(direction: Direction, alg: A) -> TransportedAlgebra<A> {
    TransportedAlgebra { inner: alg, direction }
}

impl<C, A> Algebra<Restricted<C>> for TransportedAlgebra<A>
where
    C: OperadicCategory,
    A: Algebra<C>,
{
    fn name(&self) -> String {
        format!("restrict({})", self.inner.name())
    }

    fn carrier(&self, cat: &Restricted<C>, c: &ComponentId) -> Result<Space> {
        self.inner.carrier(&cat.inner, c)
    }

    fn action(&self, cat: &Restricted<C>, t: &C::Obj, p: usize, inputs: &[usize]) -> Result<Vector> {
        self.inner.action(&cat.inner, t, p, inputs)
    }
}

impl<C, A> Algebra<Extension<C>> for TransportedAlgebra<A>
where
    C: OperadicCategory,
    A: Algebra<C>,
{
    fn name(&self) -> String {
        format!("extend({})", self.inner.name())
    }

    fn carrier(&self, cat: &Extension<C>, c: &ComponentId) -> Result<Space> {
        self.inner.carrier(&cat.inner, c)
    }

    fn action(&self, cat: &Extension<C>, t: &Corner<C::Obj>, p: usize, inputs: &[usize]) -> Result<Vector> {
        self.inner.action(&cat.inner, &t.a, p, inputs)
    }
}

/// Round trip of an algebra across the equivalence, compared on the nose:
/// `R(E(A))` along `I` for thin `C`, `E(R(A))` along `G` for thick `C`.
pub fn check_algebra_roundtrip<C, P, A>(c: &C, op: &P, alg: &A) -> Result<AxiomReport>
where
    C: OperadicCategory + Clone,
    P: Operad<C> + ?Sized,
    A: Algebra<C> + Clone,
{
    let mut report = AxiomReport::new("algebra-roundtrip", String::new());
    match c.mode() {
        Mode::Thin => {
            let n = c.objects().iter().map(|a| c.cardinality(a).len()).max().unwrap_or(0);
            let rec = restrict_category(extend_category(c.clone(), FinSet::ordinal(n))?)?;
            let back = transport_algebra(Direction::Restrict, transport_algebra(Direction::Extend, alg.clone()));
            report.subject = format!("R E {} on {}", alg.name(), c.name());
            let corner = |t: &C::Obj| {
                let x = c.cardinality(t);
                Ok(Corner { sigma: SetMap::identity(&x), x, a: t.clone() })
            };
            compare_algebras(&mut report, c, op, alg, &rec, &back, corner)?;
        }
        Mode::Thick => {
            let erc = extend_category(restrict_category(c.clone())?, thick_universe(c))?;
            let back = transport_algebra(Direction::Extend, transport_algebra(Direction::Restrict, alg.clone()));
            report.subject = format!("E R {} on {}", alg.name(), c.name());
            compare_algebras(&mut report, c, op, alg, &erc, &back, |t| thick_to_erc(c, t))?;
        }
    }
    Ok(report)
}

fn compare_algebras<C, D, P, A, B>(
    report: &mut AxiomReport,
    c: &C,
    op: &P,
    alg: &A,
    d: &D,
    other: &B,
    obj: impl Fn(&C::Obj) -> Result<D::Obj>,
) -> Result<()>
where
    C: OperadicCategory,
    D: OperadicCategory,
    P: Operad<C> + ?Sized,
    A: Algebra<C>,
    B: Algebra<D>,
{
    let en = Enumeration::new(c);
    let mut carriers_check = Check::new("carriers");
    let mut actions = Check::new("actions");
    for t in &en.objects {
        let w = || Witness::new().with("object", t);
        let image = obj(t)?;
        let (src, tgt) = source_and_target(c, t)?;
        let (d_src, d_tgt) = source_and_target(d, &image)?;
        carriers_check.record(src == d_src && tgt == d_tgt, || w().with("reason", "source lists differ"));
        for id in src.iter().chain(std::iter::once(&tgt)) {
            let lhs = other.carrier(d, id);
            carriers_check.record(lhs.is_ok() && lhs.ok() == alg.carrier(c, id).ok(), || w().with("component", id));
        }
        let mut spaces = vec![op.component(c, t)?];
        spaces.extend(carriers(alg, c, &src)?);
        for idx in basis_tuples(&dims(&spaces)) {
            let lhs = other.action(d, &image, idx[0], &idx[1..]);
            let rhs = alg.action(c, t, idx[0], &idx[1..]);
            actions.record(lhs.is_ok() && lhs.ok() == rhs.ok(), || w().with("input", format!("{idx:?}")));
        }
    }
    for check in [carriers_check, actions] {
        report.push(check.finish());
    }
    Ok(())
}

/// The operations of a modular operad read off from an algebra over ζ on
/// graphs, by acting with one-vertex, two-vertex and tadpole graphs.
pub struct ModularOps<'a, C, A> {
    pub cat: &'a C,
    pub alg: &'a A,
}

pub fn modular_ops_from_algebra<'a, C, A>(cat: &'a C, alg: &'a A) -> ModularOps<'a, C, A> {
    ModularOps { cat, alg }
}

fn graph_from(
    vertices: &[(Atom, FinSet)],
    edges: &[(Atom, Atom)],
    labels: &FinSet,
    leg_injection: SetMap,
) -> Result<Graph> {
    let vset = FinSet::new(vertices.iter().map(|(v, _)| v.clone()));
    let flags = FinSet::new(vertices.iter().flat_map(|(_, fs)| fs.iter().cloned()));
    let vertex_of = SetMap::from_pairs(
        flags.clone(),
        vset.clone(),
        vertices.iter().flat_map(|(v, fs)| fs.iter().map(move |h| (h.clone(), v.clone()))),
    )?;
    let mut inv: Vec<(Atom, Atom)> =
        edges.iter().flat_map(|(x, y)| [(x.clone(), y.clone()), (y.clone(), x.clone())]).collect();
    let paired = FinSet::new(inv.iter().map(|(x, _)| x.clone()));
    inv.extend(flags.difference(&paired).iter().map(|h| (h.clone(), h.clone())));
    let involution = SetMap::from_pairs(flags.clone(), flags.clone(), inv)?;
    let graph = GraphV { vertices: vset, flags, vertex_of, involution };
    Ok(Arc::new(GlobalLabeledGraph::new(graph, labels.clone(), leg_injection)?))
}

impl<C, A> ModularOps<'_, C, A>
where
    C: OperadicCategory<Obj = Graph, Mor = GraphMor>,
    A: Algebra<C>,
{
    fn act(&self, g: &Graph, inputs: &[Vector]) -> Result<Vector> {
        action_vec(self.alg, self.cat, g, &Vector::basis(0), inputs)
    }

    /// `M(X′) → M(X″)` for a bijection `ω: X″ → X′`, from the corolla `⋆_ω`.
    pub fn iso_act(&self, omega: &SetMap, u: &Vector) -> Result<Vector> {
        if !omega.is_bijective() {
            return Err(Error::domain(format!("{omega} is not a bijection")));
        }
        let hub = Atom::num(1);
        let g = graph_from(&[(hub, omega.codomain().clone())], &[], omega.domain(), omega.clone())?;
        self.act(&g, std::slice::from_ref(u))
    }

    /// `ₓ∘ᵧ: M(X ∪ {x}) ⊗ M(Y ∪ {y}) → M(X ∪ Y)` from the graph with two
    /// vertices joined by the edge `x ~ y`.
    pub fn xy_compose(&self, xs: &FinSet, x: &Atom, ys: &FinSet, y: &Atom, u: &Vector, v: &Vector) -> Result<Vector> {
        if !xs.is_disjoint(ys) || xs.contains(x) || xs.contains(y) || ys.contains(x) || ys.contains(y) || x == y {
            return Err(Error::domain(format!("{xs} ∪ {{{x}}} and {ys} ∪ {{{y}}} are not disjoint")));
        }
        let left = xs.union(&FinSet::singleton(x.clone()));
        let right = ys.union(&FinSet::singleton(y.clone()));
        let labels = xs.union(ys);
        let g = graph_from(
            &[(Atom::num(1), left.clone()), (Atom::num(2), right.clone())],
            &[(x.clone(), y.clone())],
            &labels,
            SetMap::from_fn(labels.clone(), left.union(&right), Atom::clone)?,
        )?;
        self.act(&g, &[u.clone(), v.clone()])
    }

    /// `∘_ab: M(X ∪ {a, b}) → M(X)` from the one-vertex graph with the loop `a ~ b`.
    pub fn self_contract(&self, xs: &FinSet, a: &Atom, b: &Atom, u: &Vector) -> Result<Vector> {
        if xs.contains(a) || xs.contains(b) || a == b {
            return Err(Error::domain(format!("{a}, {b} and {xs} are not disjoint")));
        }
        let flags = xs.union(&FinSet::new([a.clone(), b.clone()]));
        let g = graph_from(
            &[(Atom::num(1), flags.clone())],
            &[(a.clone(), b.clone())],
            xs,
            SetMap::from_fn(xs.clone(), flags, Atom::clone)?,
        )?;
        self.act(&g, std::slice::from_ref(u))
    }

    /// The action of an arbitrary graph, for comparing against iterated operations.
    pub fn graph_action(&self, g: &Graph, inputs: &[Vector]) -> Result<Vector> {
        self.act(g, inputs)
    }
}

/// Brute-force value of the chain `a -- u -- x₁~y₁ -- v -- x₂~y₂ -- w -- b`:
/// the sum over all basis labelings of the six flags of
/// `u(a, x₁) v(x₂, y₁) w(b, y₂) β(x₁, y₁) β(x₂, y₂)`, as an element of
/// `M({a, b})`. Coefficient vectors are indexed with the first atom (in
/// global order) most significant.
pub fn chain_contraction_oracle(pairing: &Pairing, u: &Vector, v: &Vector, w: &Vector) -> Vector {
    let n = pairing.size();
    let mut out = Vector::zero();
    for ia in 0..n {
        for ib in 0..n {
            let mut total = Q::zero();
            for x1 in 0..n {
                for y1 in 0..n {
                    for x2 in 0..n {
                        for y2 in 0..n {
                            let term = u.coefficient(ia * n + x1)
                                * v.coefficient(x2 * n + y1)
                                * w.coefficient(ib * n + y2)
                                * pairing.get(x1, y1)
                                * pairing.get(x2, y2);
                            total += term;
                        }
                    }
                }
            }
            out.add_term(ia * n + ib, total);
        }
    }
    out
}
