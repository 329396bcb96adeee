//! Named fixture categories with bounded enumerations.

mod omega2;
mod sets;

use std::str::FromStr;

pub use omega2::{Omega2, TreeMor, TwoTree};
pub use sets::{BoldFin, Fin, OrderedDelta, Point, PointMor, SingletonGroupoid, TerminalOne, ONE_COMPONENT};

use crate::error::{Error, Result};
use crate::finset::{Atom, FinSet};
use crate::graphs::{GrCategory, GraphBound};
use crate::opcat::Mode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FixtureName {
    Fin,
    BoldFin,
    SingletonGroupoid,
    TerminalOne,
    Omega2,
    OrderedDelta,
    Gr,
    ThinGr,
}

impl FixtureName {
    pub const ALL: [FixtureName; 8] = [
        FixtureName::Fin,
        FixtureName::BoldFin,
        FixtureName::SingletonGroupoid,
        FixtureName::TerminalOne,
        FixtureName::Omega2,
        FixtureName::OrderedDelta,
        FixtureName::Gr,
        FixtureName::ThinGr,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::Fin => "fin",
            FixtureName::BoldFin => "bfin",
            FixtureName::SingletonGroupoid => "singleton-groupoid",
            FixtureName::TerminalOne => "terminal-one",
            FixtureName::Omega2 => "omega2",
            FixtureName::OrderedDelta => "ordered-delta",
            FixtureName::Gr => "gr",
            FixtureName::ThinGr => "thin-gr",
        }
    }

    /// The bound used when none is given.
    pub fn default_bound(self) -> usize {
        3
    }
}

impl std::fmt::Display for FixtureName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FixtureName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::config(format!("unknown fixture {s:?}")))
    }
}

/// The atom universe `{a, b, c, ...}` of the given size.
pub fn letter_universe(n: usize) -> FinSet {
    FinSet::new((0..n).map(|i| {
        let c = (b'a' + (i % 26) as u8) as char;
        let label = if i < 26 { c.to_string() } else { format!("{c}{}", i / 26) };
        Atom::new(&label)
    }))
}

/// Graph bound for `gr` and `thin-gr`: at most `max_vertices` vertices.
pub fn gr_bound(max_vertices: usize) -> GraphBound {
    GraphBound { labels: letter_universe(2), max_labels: 2, max_vertices, max_flags: 4 }
}

/// A fixture category. Use [`with_fixture!`](crate::with_fixture) to run generic code on it.
#[derive(Clone, Debug)]
pub enum Fixture {
    Fin(Fin),
    BoldFin(BoldFin),
    SingletonGroupoid(SingletonGroupoid),
    TerminalOne(TerminalOne),
    Omega2(Omega2),
    OrderedDelta(OrderedDelta),
    Gr(GrCategory),
}

/// Builds the fixture `name`. `bound` is the largest ordinal for `fin` and
/// `ordered-delta`, the number of leaves for `omega2` and the universe size for
/// `bfin` and `singleton-groupoid`; `universe` overrides the latter.
pub fn fixture(name: FixtureName, universe: Option<FinSet>, bound: Option<usize>) -> Result<Fixture> {
    let bound = bound.unwrap_or(name.default_bound());
    let universe = universe.unwrap_or_else(|| letter_universe(bound));
    Ok(match name {
        FixtureName::Fin => Fixture::Fin(Fin { max: bound }),
        FixtureName::BoldFin => Fixture::BoldFin(BoldFin { universe }),
        FixtureName::SingletonGroupoid => Fixture::SingletonGroupoid(SingletonGroupoid { universe }),
        FixtureName::TerminalOne => Fixture::TerminalOne(TerminalOne),
        FixtureName::Omega2 => Fixture::Omega2(Omega2 { max_leaves: bound }),
        FixtureName::OrderedDelta => Fixture::OrderedDelta(OrderedDelta { max: bound }),
        FixtureName::Gr => Fixture::Gr(GrCategory::new(Mode::Thick, gr_bound(bound))),
        FixtureName::ThinGr => Fixture::Gr(GrCategory::new(Mode::Thin, gr_bound(bound))),
    })
}

/// Evaluates `$body` with `$cat` bound to the concrete category inside a [`Fixture`].
#[macro_export]
macro_rules! with_fixture {
    ($fx:expr, |$cat:ident| $body:expr) => {
        match $fx {
            $crate::fixtures::Fixture::Fin($cat) => $body,
            $crate::fixtures::Fixture::BoldFin($cat) => $body,
            $crate::fixtures::Fixture::SingletonGroupoid($cat) => $body,
            $crate::fixtures::Fixture::TerminalOne($cat) => $body,
            $crate::fixtures::Fixture::Omega2($cat) => $body,
            $crate::fixtures::Fixture::OrderedDelta($cat) => $body,
            $crate::fixtures::Fixture::Gr($cat) => $body,
        }
    };
}
