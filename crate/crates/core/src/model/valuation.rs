use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::graph::{Bundle, ValueGraph};
use super::point::GPoint;
use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-1/2"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// `⟨x, a⟩` for an integer point.
pub fn dot(x: &[Rational], a: &GPoint) -> Rational {
    let mut acc = Rational::zero();
    for (xi, &ai) in x.iter().zip(a.coords()) {
        if ai != 0 {
            acc += xi * rat(ai);
        }
    }
    acc
}

/// A rational or −∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    NegInfinity,
    Finite(Rational),
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::NegInfinity => None,
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(q: Rational) -> Self {
        ExtRational::Finite(q)
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRational::*;
        match (self, other) {
            (NegInfinity, NegInfinity) => Ordering::Equal,
            (NegInfinity, Finite(_)) => Ordering::Less,
            (Finite(_), NegInfinity) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExtRational {
    type Output = ExtRational;

    fn add(self, rhs: &ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::NegInfinity,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInfinity => f.write_str("-inf"),
            ExtRational::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "-inf" {
            return Ok(ExtRational::NegInfinity);
        }
        parse_rational(s)
            .map(ExtRational::Finite)
            .ok_or_else(|| Error::parse("weight", format!("`{s}` is not a rational or -inf")))
    }
}

/// A graphical valuation: one weight per coordinate of the value graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    weights: Vec<ExtRational>,
}

impl Valuation {
    pub fn new(weights: Vec<ExtRational>) -> Self {
        Valuation { weights }
    }

    pub fn finite(weights: Vec<Rational>) -> Self {
        Valuation {
            weights: weights.into_iter().map(ExtRational::Finite).collect(),
        }
    }

    pub fn from_ints(weights: &[i64]) -> Self {
        Self::finite(weights.iter().map(|&w| rat(w)).collect())
    }

    pub fn weights(&self) -> &[ExtRational] {
        &self.weights
    }

    pub fn is_finite(&self) -> bool {
        self.weights.iter().all(ExtRational::is_finite)
    }

    /// Vertices with finite weight.
    pub fn support(&self, graph: &ValueGraph) -> Bundle {
        Bundle::from_items((0..graph.n()).filter(|&i| self.weights[i].is_finite()))
    }

    /// True when the finite weights form a clique: every edge inside the
    /// vertex support is finite.
    pub fn is_clique_supported(&self, graph: &ValueGraph) -> bool {
        let support = self.support(graph);
        graph
            .edge_coords()
            .filter(|&(_, i, j)| support.contains(i) && support.contains(j))
            .all(|(c, _, _)| self.weights[c].is_finite())
    }

    pub(crate) fn check(&self, graph: &ValueGraph) -> Result<()> {
        graph.check_len("valuation weights", self.weights.len())
    }

    /// `v(S)`: vertex weights over `S` plus edge weights over edges inside
    /// `S`; −∞ if any touched weight is −∞.
    pub fn value(&self, graph: &ValueGraph, s: Bundle) -> ExtRational {
        let mut acc = Rational::zero();
        for i in s.items() {
            match &self.weights[i] {
                ExtRational::Finite(w) => acc += w,
                ExtRational::NegInfinity => return ExtRational::NegInfinity,
            }
        }
        for (c, i, j) in graph.edge_coords() {
            if s.contains(i) && s.contains(j) {
                match &self.weights[c] {
                    ExtRational::Finite(w) => acc += w,
                    ExtRational::NegInfinity => return ExtRational::NegInfinity,
                }
            }
        }
        ExtRational::Finite(acc)
    }

    /// Adds `c` entrywise; −∞ stays −∞.
    pub fn shift(&self, c: &[Rational]) -> Valuation {
        assert_eq!(c.len(), self.weights.len(), "shift vector length");
        Valuation {
            weights: self
                .weights
                .iter()
                .zip(c)
                .map(|(w, ci)| match w {
                    ExtRational::Finite(q) => ExtRational::Finite(q + ci),
                    ExtRational::NegInfinity => ExtRational::NegInfinity,
                })
                .collect(),
        }
    }

    /// Weights with every −∞ replaced by `-big_m`.
    pub fn with_penalty(&self, big_m: &Rational) -> Vec<Rational> {
        self.weights
            .iter()
            .map(|w| match w {
                ExtRational::Finite(q) => q.clone(),
                ExtRational::NegInfinity => -big_m.clone(),
            })
            .collect()
    }

    /// Largest finite `|w|`, if any weight is finite.
    pub fn max_abs_finite(&self) -> Option<Rational> {
        self.weights
            .iter()
            .filter_map(ExtRational::finite)
            .map(|q| q.abs())
            .max()
    }
}

/// An anonymous graphical price vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PriceVector {
    entries: Vec<Rational>,
    linear_only: bool,
}

impl PriceVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        PriceVector {
            entries,
            linear_only: false,
        }
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero(d: usize) -> Self {
        Self::new(vec![Rational::zero(); d])
    }

    /// A linear price: vertex prices as given, every edge price zero.
    pub fn linear(graph: &ValueGraph, vertex_prices: Vec<Rational>) -> Result<Self> {
        if vertex_prices.len() != graph.n() {
            return Err(Error::DimensionMismatch {
                what: "vertex prices",
                expected: graph.n(),
                got: vertex_prices.len(),
            });
        }
        let mut entries = vertex_prices;
        entries.resize(graph.d(), Rational::zero());
        Ok(PriceVector {
            entries,
            linear_only: true,
        })
    }

    /// Marks the price as linear, failing if an edge entry is nonzero.
    pub fn into_linear(mut self, graph: &ValueGraph) -> Result<Self> {
        if let Some(c) = (graph.n()..self.entries.len()).find(|&c| !self.entries[c].is_zero()) {
            return Err(Error::NonLinearPrice(c));
        }
        self.linear_only = true;
        Ok(self)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_linear_only(&self) -> bool {
        self.linear_only
    }

    pub fn is_linear(&self, graph: &ValueGraph) -> bool {
        self.entries[graph.n()..].iter().all(Zero::is_zero)
    }

    pub(crate) fn check(&self, graph: &ValueGraph) -> Result<()> {
        graph.check_len("price vector", self.entries.len())
    }

    /// `⟨p, a⟩`.
    pub fn pair(&self, a: &GPoint) -> Rational {
        dot(&self.entries, a)
    }

    /// Price of the bundle `S`.
    pub fn price_of(&self, graph: &ValueGraph, s: Bundle) -> Rational {
        let mut acc = Rational::zero();
        for i in s.items() {
            acc += &self.entries[i];
        }
        for (c, i, j) in graph.edge_coords() {
            if s.contains(i) && s.contains(j) {
                acc += &self.entries[c];
            }
        }
        acc
    }

    pub fn add(&self, c: &[Rational]) -> PriceVector {
        PriceVector::new(self.entries.iter().zip(c).map(|(p, x)| p + x).collect())
    }
}

impl fmt::Display for PriceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}
