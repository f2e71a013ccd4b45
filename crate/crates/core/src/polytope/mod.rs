//! The polytope P(G) spanned by characteristic vectors: its vertices, the
//! Padberg relaxation, the two constructive clique decompositions and the
//! brute-force geometric oracles.

mod decompose;
mod faces;
mod padberg;

pub use decompose::{
    clique_decompose, decompose_scaled_binary, enumerate_decompositions, nested_chain_point,
    CliqueDecomposition, CliquePart, Decompositions,
};
pub(crate) use decompose::{multiplicities, next_permutation};
pub use faces::{
    minkowski_contains, minkowski_weights, supporting_valuation, vertex_sum_contains, Face,
};
pub use padberg::{padberg_check, representative_inequality_holds, PadbergInequality, Violation};

use crate::error::{Error, Result};
use crate::model::{char_vector_unchecked, Bundle, GPoint, ValueGraph};

/// Hard limit on `n` for listing all `2^n` vertices of P(G).
pub const VERTEX_ENUMERATION_CAP: usize = 16;

/// Enumeration limits for the exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_n: usize,
    pub max_m: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_n: 6, max_m: 6 }
    }
}

impl Caps {
    pub fn check_n(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            Err(Error::CapExceeded {
                what: "n",
                value: n,
                cap: self.max_n,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_m(&self, m: usize) -> Result<()> {
        if m > self.max_m {
            Err(Error::CapExceeded {
                what: "m",
                value: m,
                cap: self.max_m,
            })
        } else {
            Ok(())
        }
    }
}

/// All `2^n` vertices of P(G), ordered by the bitmask of their bundle.
pub fn vertices(graph: &ValueGraph) -> Result<Vec<GPoint>> {
    if graph.n() > VERTEX_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "n",
            value: graph.n(),
            cap: VERTEX_ENUMERATION_CAP,
        });
    }
    Ok(Bundle::full(graph.n())
        .subsets()
        .map(|s| char_vector_unchecked(s, graph))
        .collect())
}

/// Recovers the bundle of a characteristic vector, or `None` if `a` is not
/// one.
pub fn bundle_of(graph: &ValueGraph, a: &GPoint) -> Option<Bundle> {
    if a.len() != graph.d() || a.coords()[..graph.n()].iter().any(|&x| x != 0 && x != 1) {
        return None;
    }
    let s = Bundle::from_items((0..graph.n()).filter(|&i| a.coords()[i] == 1));
    (char_vector_unchecked(s, graph) == *a).then_some(s)
}
