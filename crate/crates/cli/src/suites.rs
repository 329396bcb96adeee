//! Running the checker suites on the built-in fixtures.

use clap::ValueEnum;
use opcat::cleavage::check_cleavage_on;
use opcat::finset::{FinSet, SetMap};
use opcat::fixtures::{fixture, letter_universe, Fixture, FixtureName};
use opcat::graphs::GrCategory;
use opcat::opcat::{check_axioms_on, check_quasibijections, check_unitality_on, Enumeration, OperadicCategory};
use opcat::operads::{
    check_algebra_on, check_odd_zeta_coherence_on, check_operad_on, check_operad_unitality_on, constant_zeta,
    endomorphism_modular, AssocToy, Operad, Pairing, TrivialAlgebra,
};
use opcat::report::{AxiomReport, Entry};
use opcat::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Axioms,
    Cleavage,
    Unitality,
    Operad,
    Algebra,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Axioms, Suite::Cleavage, Suite::Unitality, Suite::Operad, Suite::Algebra];
    /// What `report` runs when no suite is named.
    pub const CATEGORY: [Suite; 3] = [Suite::Axioms, Suite::Cleavage, Suite::Unitality];
}

/// A suite that could not run on this subject, e.g. unitality without chosen terminals.
fn skipped(suite: &str, subject: String, err: &Error) -> AxiomReport {
    let mut r = AxiomReport::new(suite, subject);
    r.push(Entry::skip("applicable", err.to_string()));
    r
}

fn or_skip(suite: &str, subject: String, r: Result<AxiomReport>) -> AxiomReport {
    r.unwrap_or_else(|e| skipped(suite, subject, &e))
}

fn operad_suites<C, P>(cat: &C, op: &P, en: &Enumeration<C>, out: &mut Vec<AxiomReport>)
where
    C: OperadicCategory,
    P: Operad<C>,
{
    out.push(check_operad_on(cat, op, en));
    let subject = format!("{} on {}", op.name(), cat.name());
    out.push(or_skip("operad-unitality", subject, check_operad_unitality_on(cat, op, en)));
}

/// Suites that only need the category interface.
fn generic<C: OperadicCategory>(cat: &C, suites: &[Suite], en: &Enumeration<C>) -> Vec<AxiomReport> {
    let mut out = Vec::new();
    for s in suites {
        match s {
            Suite::Axioms => out.push(check_axioms_on(cat, en)),
            Suite::Cleavage => out.push(check_cleavage_on(cat, en)),
            Suite::Unitality => match check_unitality_on(cat, en) {
                Ok(r) => {
                    let unital = r.passed();
                    out.push(r);
                    if unital {
                        out.push(check_quasibijections(cat, en));
                    }
                }
                Err(e) => out.push(skipped("unitality", cat.name(), &e)),
            },
            Suite::Operad => operad_suites(cat, &constant_zeta::<C>(), en, &mut out),
            Suite::Algebra => {
                if cat.objects().first().is_some_and(|o| cat.component(o).is_none()) {
                    let e = Error::config(format!("{} has no component function", cat.name()));
                    out.push(skipped("algebra", cat.name(), &e));
                } else {
                    out.push(check_algebra_on(cat, &constant_zeta::<C>(), &TrivialAlgebra, en));
                }
            }
        }
    }
    out
}

fn finset_extras<C>(cat: &C, suites: &[Suite], en: &Enumeration<C>) -> Vec<AxiomReport>
where
    C: OperadicCategory<Obj = FinSet, Mor = SetMap>,
{
    let mut out = Vec::new();
    if suites.contains(&Suite::Operad) {
        operad_suites(cat, &AssocToy, en, &mut out);
    }
    out
}

fn graph_extras(cat: &GrCategory, suites: &[Suite], en: &Enumeration<GrCategory>) -> Result<Vec<AxiomReport>> {
    let mut out = Vec::new();
    if suites.contains(&Suite::Operad) {
        operad_suites(cat, &opcat::operads::OddZeta, en, &mut out);
        out.push(check_odd_zeta_coherence_on(cat, en));
    }
    if suites.contains(&Suite::Algebra) {
        let end = endomorphism_modular(letter_universe(2), Pairing::identity(2))?;
        out.push(check_algebra_on(cat, &constant_zeta::<GrCategory>(), &end, en));
    }
    Ok(out)
}

/// Runs `suites` (in the order of [`Suite::ALL`]) on the named fixture.
pub fn run_suites(name: FixtureName, bound: Option<usize>, suites: &[Suite]) -> Result<Vec<AxiomReport>> {
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let fx = fixture(name, None, bound)?;
    let reports = match &fx {
        Fixture::Fin(c) => with_extras(c, &suites, finset_extras),
        Fixture::BoldFin(c) => with_extras(c, &suites, finset_extras),
        Fixture::OrderedDelta(c) => with_extras(c, &suites, finset_extras),
        Fixture::SingletonGroupoid(c) => with_extras(c, &suites, finset_extras),
        Fixture::TerminalOne(c) => with_extras(c, &suites, |_, _, _| Vec::new()),
        Fixture::Omega2(c) => with_extras(c, &suites, |_, _, _| Vec::new()),
        Fixture::Gr(c) => {
            let en = Enumeration::new(c);
            let mut out = generic(c, &suites, &en);
            out.extend(graph_extras(c, &suites, &en)?);
            out
        }
    };
    Ok(reports)
}

fn with_extras<C: OperadicCategory>(
    cat: &C,
    suites: &[Suite],
    extras: impl FnOnce(&C, &[Suite], &Enumeration<C>) -> Vec<AxiomReport>,
) -> Vec<AxiomReport> {
    let en = Enumeration::new(cat);
    let mut out = generic(cat, suites, &en);
    out.extend(extras(cat, suites, &en));
    out
}
