use std::fmt;
use std::ops::{Add, AddAssign, Sub};

use serde::{Deserialize, Serialize};

use super::graph::{Bundle, ValueGraph};
use crate::error::{Error, Result};

/// An integer point over the coordinates of a [`ValueGraph`]: vertex
/// counts first, then edge (pair) counts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GPoint(pub Vec<i64>);

impl GPoint {
    pub fn zero(d: usize) -> Self {
        GPoint(vec![0; d])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> GPoint {
        GPoint(self.0.iter().map(|x| x * k).collect())
    }
}

impl Add for &GPoint {
    type Output = GPoint;

    fn add(self, rhs: &GPoint) -> GPoint {
        debug_assert_eq!(self.len(), rhs.len());
        GPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GPoint {
    type Output = GPoint;

    fn sub(self, rhs: &GPoint) -> GPoint {
        debug_assert_eq!(self.len(), rhs.len());
        GPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&GPoint> for GPoint {
    fn add_assign(&mut self, rhs: &GPoint) {
        debug_assert_eq!(self.len(), rhs.len());
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl fmt::Display for GPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Characteristic vector `a_S` of a bundle: vertex indicators of `S` plus an
/// indicator for every edge of the graph with both endpoints in `S`.
pub fn char_vector(s: Bundle, graph: &ValueGraph) -> Result<GPoint> {
    graph.check_bundle(s)?;
    Ok(char_vector_unchecked(s, graph))
}

pub(crate) fn char_vector_unchecked(s: Bundle, graph: &ValueGraph) -> GPoint {
    let mut coords = vec![0i64; graph.d()];
    for i in s.items() {
        coords[i] = 1;
    }
    for (c, i, j) in graph.edge_coords() {
        if s.contains(i) && s.contains(j) {
            coords[c] = 1;
        }
    }
    GPoint(coords)
}

/// The projection π: drops the edge coordinates.
pub fn project(a: &GPoint, graph: &ValueGraph) -> Vec<i64> {
    a.0[..graph.n().min(a.len())].to_vec()
}

/// One bundle per agent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Allocation {
    pub bundles: Vec<Bundle>,
}

impl Allocation {
    pub fn new(bundles: Vec<Bundle>) -> Self {
        Allocation { bundles }
    }

    pub fn empty(m: usize) -> Self {
        Allocation {
            bundles: vec![Bundle::EMPTY; m],
        }
    }

    pub fn agents(&self) -> usize {
        self.bundles.len()
    }

    /// `Σ_b a_{S^b}`.
    pub fn aggregate(&self, graph: &ValueGraph) -> Result<GPoint> {
        let mut total = GPoint::zero(graph.d());
        for &s in &self.bundles {
            total += &char_vector(s, graph)?;
        }
        Ok(total)
    }

    /// True iff the projection of the aggregate is exactly `supply`.
    pub fn is_complete_for(&self, graph: &ValueGraph, supply: &[i64]) -> Result<bool> {
        if supply.len() != graph.n() {
            return Err(Error::DimensionMismatch {
                what: "supply",
                expected: graph.n(),
                got: supply.len(),
            });
        }
        Ok(project(&self.aggregate(graph)?, graph) == supply)
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, s) in self.bundles.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}
