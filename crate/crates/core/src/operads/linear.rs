//! Exact graded rational vector spaces with a fixed basis, sparse vectors and
//! Koszul signs for reordering tensor factors.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::finset::Sign;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Which base category a space lives in: finite sets (linearized, maps send
/// basis elements to basis elements), rational vector spaces, or signed lines
/// (one-dimensional, maps are ±1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Set,
    Vect,
    Line,
}

/// A space with an ordered basis of homogeneous elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub basis: Vec<String>,
    pub degrees: Vec<u32>,
}

impl Space {
    pub fn new(basis: Vec<String>, degrees: Vec<u32>) -> Space {
        assert_eq!(basis.len(), degrees.len(), "one degree per basis element");
        Space { basis, degrees }
    }

    /// The monoidal unit: one basis element `1` in degree 0.
    pub fn unit() -> Space {
        Space::line(0, "1")
    }

    pub fn line(degree: u32, label: &str) -> Space {
        Space { basis: vec![label.to_string()], degrees: vec![degree] }
    }

    /// Degree-0 space with the given basis.
    pub fn even(basis: Vec<String>) -> Space {
        let degrees = vec![0; basis.len()];
        Space { basis, degrees }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }
}

/// A sparse vector: basis index to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector(BTreeMap<usize, Q>);

impl Vector {
    pub fn zero() -> Vector {
        Vector(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Vector {
        Vector::term(i, Q::one())
    }

    pub fn term(i: usize, c: Q) -> Vector {
        let mut v = Vector::zero();
        v.add_term(i, c);
        v
    }

    pub fn add_term(&mut self, i: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(i).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &Q) {
        for (i, x) in &other.0 {
            self.add_term(*i, x * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> Vector {
        let mut v = Vector::zero();
        v.add_scaled(self, c);
        v
    }

    pub fn signed(&self, s: Sign) -> Vector {
        self.scaled(&q(s.as_i64()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn coefficient(&self, i: usize) -> Q {
        self.0.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    /// Whether this is a single basis element with coefficient 1.
    pub fn is_basis_element(&self) -> bool {
        self.0.len() == 1 && self.0.values().all(One::is_one)
    }

    /// Whether this is `±` a single basis element.
    pub fn is_signed_basis_element(&self) -> bool {
        self.0.len() == 1 && self.0.values().all(|c| c.abs().is_one())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let s = self.0.iter().map(|(i, c)| format!("{c}·e{i}")).join(" + ");
        f.write_str(&s)
    }
}

/// Expands `v₁ ⊗ … ⊗ vₖ` into coefficient and basis-index tuples.
pub fn expand(vs: &[Vector]) -> Vec<(Q, Vec<usize>)> {
    let mut out = vec![(Q::one(), Vec::with_capacity(vs.len()))];
    for v in vs {
        let mut next = Vec::with_capacity(out.len() * v.0.len());
        for (c, idx) in &out {
            for (i, x) in v.terms() {
                let mut idx = idx.clone();
                idx.push(i);
                next.push((c * x, idx));
            }
        }
        out = next;
    }
    out
}

/// Every tuple of basis indices for the given dimensions.
pub fn basis_tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    if dims.is_empty() {
        return vec![Vec::new()];
    }
    dims.iter().map(|&d| 0..d).multi_cartesian_product().collect()
}

/// The Koszul sign of moving homogeneous factors of the given degrees into
/// the order `order` (a list of old positions).
pub fn koszul(degrees: &[u32], order: &[usize]) -> Sign {
    let mut odd = 0usize;
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            if a > b && degrees[a] % 2 == 1 && degrees[b] % 2 == 1 {
                odd += 1;
            }
        }
    }
    Sign::from_parity(odd % 2 == 1)
}
