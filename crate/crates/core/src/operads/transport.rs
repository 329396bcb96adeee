//! Moving operads along the restriction and extension of operadic categories.

use super::{basis_tuples, koszul, mu_vec, Base, Operad, Space, Vector};
use crate::equivalence::{
    extend_category, fiber_corner, normalize, restrict_category, thick_mor_to_erc, thick_to_erc, thick_universe,
    Corner, ExtMor, Extension, Restricted,
};
use crate::error::{Error, Result};
use crate::finset::{FinSet, SetMap};
use crate::opcat::{ComponentId, Enumeration, Mode, OperadicCategory};
use crate::report::{AxiomReport, Check, Witness};

/// `P` restricted to the ordinal-carded objects. A fiber of `R(C)` is the
/// canonical lift `λ: F → F'` of the fiber `F` in `C`, so `μ` first moves the
/// fiber elements back along `P(λ)`.
#[derive(Clone, Debug)]
pub struct RestrictedOperad<P>(pub P);

pub fn restrict_operad<P>(p: P) -> RestrictedOperad<P> {
    RestrictedOperad(p)
}

impl<C, P> Operad<Restricted<C>> for RestrictedOperad<P>
where
    C: OperadicCategory,
    P: Operad<C>,
{
    fn name(&self) -> String {
        format!("restrict({})", self.0.name())
    }

    fn base(&self) -> Base {
        self.0.base()
    }

    fn component(&self, cat: &Restricted<C>, t: &C::Obj) -> Result<Space> {
        self.0.component(&cat.inner, t)
    }

    fn mu(&self, cat: &Restricted<C>, f: &C::Mor, x: usize, fibers: &[usize]) -> Result<Vector> {
        let c = &cat.inner;
        let mut zs = Vec::with_capacity(fibers.len());
        for (a, &z) in c.cardinality(&c.target(f)).iter().zip(fibers) {
            let l = cat.to_ordinal(&c.fiber(f, a)?)?;
            zs.push(self.0.action(c, &l.morphism, z)?);
        }
        mu_vec(&self.0, c, f, &Vector::basis(x), &zs)
    }

    fn action(&self, cat: &Restricted<C>, lift: &C::Mor, x: usize) -> Result<Vector> {
        self.0.action(&cat.inner, lift, x)
    }

    fn unit(&self, cat: &Restricted<C>, c: &ComponentId) -> Option<Vector> {
        self.0.unit(&cat.inner, c)
    }
}

/// `P` extended to `E(C)`. The colimit over the connected groupoid of
/// representatives is taken at the normalized corner `(X, can, A)`, so the
/// component there is `P(A)`; fibers are normalized by a lift `λ`, and `μ`
/// moves fiber elements back along `P(λ)`.
#[derive(Clone, Debug)]
pub struct ExtendedOperad<P>(pub P);

pub fn extend_operad<P>(p: P) -> ExtendedOperad<P> {
    ExtendedOperad(p)
}

impl<C, P> Operad<Extension<C>> for ExtendedOperad<P>
where
    C: OperadicCategory,
    P: Operad<C>,
{
    fn name(&self) -> String {
        format!("extend({})", self.0.name())
    }

    fn base(&self) -> Base {
        self.0.base()
    }

    fn component(&self, cat: &Extension<C>, t: &Corner<C::Obj>) -> Result<Space> {
        self.0.component(&cat.inner, &t.a)
    }

    fn mu(&self, cat: &Extension<C>, m: &ExtMor<C::Obj, C::Mor>, x: usize, fibers: &[usize]) -> Result<Vector> {
        let c = &cat.inner;
        let ys = &m.target.x;
        // Fiber elements moved onto the fibers of the representative.
        let mut moved = Vec::with_capacity(fibers.len());
        let mut degrees = Vec::with_capacity(fibers.len());
        for (y, &z) in ys.iter().zip(fibers) {
            let corner = fiber_corner(c, m, y)?;
            let (normal, l) = normalize(c, &corner)?;
            degrees.push(self.0.component(c, &normal.a)?.degree(z));
            moved.push(match l {
                Some(l) => self.0.action(c, &l, z)?,
                None => Vector::basis(z),
            });
        }
        // The representative's fibers are indexed by |B| through η = σ_target.
        let order = c
            .cardinality(&m.target.a)
            .iter()
            .map(|i| {
                let y = m.target.sigma.inverse()?.apply(i)?.clone();
                ys.position(&y).ok_or_else(|| Error::domain(format!("{y} ∉ {ys}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let zs: Vec<Vector> = order.iter().map(|&p| moved[p].clone()).collect();
        let sign = koszul(&degrees, &order);
        Ok(mu_vec(&self.0, c, &m.f, &Vector::basis(x), &zs)?.signed(sign))
    }

    fn action(&self, cat: &Extension<C>, lift: &ExtMor<C::Obj, C::Mor>, x: usize) -> Result<Vector> {
        self.0.action(&cat.inner, &lift.f, x)
    }

    fn unit(&self, cat: &Extension<C>, c: &ComponentId) -> Option<Vector> {
        self.0.unit(&cat.inner, c)
    }
}

/// Compares `P` on `C` with `Q` on `D` along a functor given on objects and
/// morphisms: equal components, equal `μ`, and equal cloven actions.
pub fn check_operads_agree<C, D, P, Q>(
    c: &C,
    p: &P,
    d: &D,
    q: &Q,
    obj: impl Fn(&C::Obj) -> Result<D::Obj>,
    mor: impl Fn(&C::Mor) -> Result<D::Mor>,
) -> Result<AxiomReport>
where
    C: OperadicCategory,
    D: OperadicCategory,
    P: Operad<C> + ?Sized,
    Q: Operad<D> + ?Sized,
{
    let mut report =
        AxiomReport::new("operad-agreement", format!("{} on {} vs {} on {}", p.name(), c.name(), q.name(), d.name()));
    compare_operads(&mut report, c, p, d, q, obj, mor)?;
    Ok(report)
}

fn compare_operads<C, D, P, Q>(
    report: &mut AxiomReport,
    c: &C,
    p: &P,
    d: &D,
    q: &Q,
    obj: impl Fn(&C::Obj) -> Result<D::Obj>,
    mor: impl Fn(&C::Mor) -> Result<D::Mor>,
) -> Result<()>
where
    C: OperadicCategory,
    D: OperadicCategory,
    P: Operad<C> + ?Sized,
    Q: Operad<D> + ?Sized,
{
    let en = Enumeration::new(c);
    let mut comps = Check::new("components");
    let mut mus = Check::new("composition");
    let mut acts = Check::new("action");
    for a in &en.objects {
        let w = || Witness::new().with("object", a);
        let lhs = obj(a).and_then(|b| q.component(d, &b));
        comps.record(lhs.is_ok() && lhs.ok() == p.component(c, a).ok(), w);
        for sigma in c.lift_tests(a) {
            let Ok(l) = c.lift(&sigma, a) else { continue };
            let mapped = mor(&l.morphism)?;
            for i in 0..p.component(c, &l.target)?.dim() {
                let r = q.action(d, &mapped, i);
                acts.record(r.is_ok() && r.ok() == p.action(c, &l.morphism, i).ok(), || w().with("sigma", &sigma));
            }
        }
    }
    for (_, _, f) in en.morphisms() {
        let w = || Witness::new().with("f", f);
        let mapped = mor(f)?;
        let mut spaces = vec![p.component(c, &c.target(f))?];
        for a in c.cardinality(&c.target(f)).iter() {
            spaces.push(p.component(c, &c.fiber(f, a)?)?);
        }
        for idx in basis_tuples(&spaces.iter().map(Space::dim).collect::<Vec<_>>()) {
            let lhs = q.mu(d, &mapped, idx[0], &idx[1..]);
            let rhs = p.mu(c, f, idx[0], &idx[1..]);
            mus.record(lhs.is_ok() && lhs.ok() == rhs.ok(), || w().with("input", format!("{idx:?}")));
        }
    }
    for check in [comps, mus, acts] {
        report.push(check.finish());
    }
    Ok(())
}

/// Round trip of an operad across the equivalence, compared on the nose.
/// For thin `C` this is `R(E(P))` along `I: A ↦ (n̲, id, A)`; for thick `C`
/// it is `E(R(P))` along `G: T ↦ (|T|, can, T')`.
pub fn check_operad_roundtrip<C, P>(c: &C, p: &P) -> Result<AxiomReport>
where
    C: OperadicCategory + Clone,
    P: Operad<C> + Clone,
{
    match c.mode() {
        Mode::Thin => {
            let n = c.objects().iter().map(|a| c.cardinality(a).len()).max().unwrap_or(0);
            let rec = restrict_category(extend_category(c.clone(), FinSet::ordinal(n))?)?;
            let rep = restrict_operad(extend_operad(p.clone()));
            let corner = |a: &C::Obj| {
                let x = c.cardinality(a);
                Corner { sigma: SetMap::identity(&x), x, a: a.clone() }
            };
            let mut report = AxiomReport::new("operad-roundtrip", format!("R E {} over {}", p.name(), c.name()));
            let ext =
                |f: &C::Mor| Ok(ExtMor { source: corner(&c.source(f)), target: corner(&c.target(f)), f: f.clone() });
            compare_operads(&mut report, c, p, &rec, &rep, |a| Ok(corner(a)), ext)?;
            Ok(report)
        }
        Mode::Thick => {
            let erc = extend_category(restrict_category(c.clone())?, thick_universe(c))?;
            let erp = extend_operad(restrict_operad(p.clone()));
            let mut report = AxiomReport::new("operad-roundtrip", format!("E R {} over {}", p.name(), c.name()));
            compare_operads(&mut report, c, p, &erc, &erp, |t| thick_to_erc(c, t), |f| thick_mor_to_erc(c, f))?;
            Ok(report)
        }
    }
}
