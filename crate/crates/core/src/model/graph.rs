use std::fmt;

use crate::error::{Error, Result};

/// Largest number of item types a [`Bundle`] can hold.
pub const MAX_ITEMS: usize = 64;

/// A set of item types, stored as a bitmask over `0..n`.
///
/// Item `i` is bit `i`; displayed 1-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bundle(u64);

impl Bundle {
    pub const EMPTY: Bundle = Bundle(0);

    pub fn from_mask(mask: u64) -> Self {
        Bundle(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    /// All items `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Bundle(u64::MAX)
        } else {
            Bundle((1u64 << n) - 1)
        }
    }

    pub fn from_items<I: IntoIterator<Item = usize>>(items: I) -> Self {
        let mut mask = 0u64;
        for i in items {
            assert!(i < MAX_ITEMS, "item {i} out of range");
            mask |= 1 << i;
        }
        Bundle(mask)
    }

    pub fn contains(self, item: usize) -> bool {
        item < MAX_ITEMS && self.0 & (1 << item) != 0
    }

    pub fn insert(&mut self, item: usize) {
        self.0 |= 1 << item;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Bundle) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Bundle) -> Bundle {
        Bundle(self.0 | other.0)
    }

    pub fn intersection(self, other: Bundle) -> Bundle {
        Bundle(self.0 & other.0)
    }

    pub fn is_disjoint(self, other: Bundle) -> bool {
        self.0 & other.0 == 0
    }

    /// Items in ascending order (0-based).
    pub fn items(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Every subset of `self`, in ascending mask order.
    pub fn subsets(self) -> impl Iterator<Item = Bundle> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Bundle(cur))
        })
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.items().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

/// The underlying value graph on item types `0..n`.
///
/// Coordinates of points over the graph are the `n` vertices in ascending
/// order followed by the edges in lexicographic order, so `d = n + |E|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // n*n table of coordinate indices, None for non-edges
    coord: Vec<Option<usize>>,
}

impl ValueGraph {
    /// Builds a graph from 0-based edges; edges are normalized to `i < j`
    /// and sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_ITEMS {
            return Err(Error::TooManyItems { n, max: MAX_ITEMS });
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidEdge(a + 1, b + 1));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0].0 + 1, w[0].1 + 1));
            }
        }
        let mut coord = vec![None; n * n];
        for (k, &(i, j)) in list.iter().enumerate() {
            coord[i * n + j] = Some(n + k);
            coord[j * n + i] = Some(n + k);
        }
        Ok(ValueGraph {
            n,
            edges: list,
            coord,
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient dimension `n + |E|`.
    pub fn d(&self) -> usize {
        self.n + self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Coordinate index of edge `ij`, if present.
    pub fn edge_coord(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n {
            return None;
        }
        self.coord[i * self.n + j]
    }

    /// `(coordinate, i, j)` for every edge.
    pub fn edge_coords(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(move |(k, &(i, j))| (self.n + k, i, j))
    }

    /// Human-readable coordinate label, 1-based (`"3"` or `"1-2"`).
    pub fn coord_label(&self, coord: usize) -> String {
        if coord < self.n {
            (coord + 1).to_string()
        } else {
            let (i, j) = self.edges[coord - self.n];
            format!("{}-{}", i + 1, j + 1)
        }
    }

    pub(crate) fn check_bundle(&self, s: Bundle) -> Result<()> {
        if s.is_subset(Bundle::full(self.n)) {
            Ok(())
        } else {
            let item = s.items().find(|&i| i >= self.n).unwrap_or(self.n);
            Err(Error::ItemOutOfRange { item, n: self.n })
        }
    }

    pub(crate) fn check_len(&self, what: &'static str, len: usize) -> Result<()> {
        if len == self.d() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                what,
                expected: self.d(),
                got: len,
            })
        }
    }
}
