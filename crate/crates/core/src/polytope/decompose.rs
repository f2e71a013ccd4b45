use std::collections::BTreeMap;

use super::padberg::representative_inequality_holds;
use super::Caps;
use crate::error::{Error, Result};
use crate::model::{char_vector_unchecked, Bundle, GPoint, ValueGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliquePart {
    pub multiplicity: u64,
    pub clique: Bundle,
}

/// `a = Σ multiplicity · χ(K_clique)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CliqueDecomposition {
    pub parts: Vec<CliquePart>,
}

impl CliqueDecomposition {
    pub fn reconstruct(&self, graph: &ValueGraph) -> GPoint {
        let mut a = GPoint::zero(graph.d());
        for part in &self.parts {
            a += &char_vector_unchecked(part.clique, graph).scaled(part.multiplicity as i64);
        }
        a
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.parts.iter().map(|p| p.multiplicity).sum()
    }

    pub fn is_pairwise_disjoint(&self) -> bool {
        let mut seen = Bundle::EMPTY;
        for p in &self.parts {
            if !p.clique.is_disjoint(seen) {
                return false;
            }
            seen = seen.union(p.clique);
        }
        true
    }

    /// True if the nonempty cliques, in order, form a strictly decreasing
    /// chain under inclusion.
    pub fn is_strict_chain(&self) -> bool {
        let cliques: Vec<Bundle> = self
            .parts
            .iter()
            .map(|p| p.clique)
            .filter(|c| !c.is_empty())
            .collect();
        cliques
            .windows(2)
            .all(|w| w[1].is_subset(w[0]) && w[1] != w[0])
    }

    /// Each clique repeated by its multiplicity.
    pub fn expand(&self) -> Vec<Bundle> {
        self.parts
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.clique, p.multiplicity as usize))
            .collect()
    }
}

/// Splits `a ∈ {0,r}^d` satisfying (i), (ii) and (iv) into `r` copies of
/// pairwise disjoint complete graphs, one per connected component of the
/// support graph of `a / r`. Parts are ordered by smallest item.
pub fn clique_decompose(graph: &ValueGraph, a: &GPoint, r: i64) -> Result<CliqueDecomposition> {
    if !graph.is_complete() {
        return Err(Error::NotComplete);
    }
    graph.check_len("point", a.len())?;
    assert!(r > 0, "r must be positive");
    let x = a.coords();
    for (coord, &v) in x.iter().enumerate() {
        if v != 0 && v != r {
            return Err(Error::NotScaledBinary { coord, value: v, r });
        }
    }
    for (c, i, j) in graph.edge_coords() {
        if x[c] == r && (x[i] == 0 || x[j] == 0) {
            return Err(Error::DanglingEdge { coord: c });
        }
    }

    let n = graph.n();
    let mut component = vec![usize::MAX; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if x[start] == 0 || component[start] != usize::MAX {
            continue;
        }
        let id = parts.len();
        let mut members = Bundle::EMPTY;
        let mut stack = vec![start];
        component[start] = id;
        while let Some(i) = stack.pop() {
            members.insert(i);
            for j in 0..n {
                if j != i && component[j] == usize::MAX && x[graph.edge_coord(i, j).unwrap()] == r {
                    component[j] = id;
                    stack.push(j);
                }
            }
        }
        let items: Vec<usize> = members.items().collect();
        for (p, &i) in items.iter().enumerate() {
            for &j in &items[p + 1..] {
                if x[graph.edge_coord(i, j).unwrap()] != r {
                    return Err(Error::NotClique { item: start + 1 });
                }
            }
        }
        parts.push(CliquePart {
            multiplicity: r as u64,
            clique: members,
        });
    }
    Ok(CliqueDecomposition { parts })
}

/// The clique decomposition of `a` laid out as exactly `m` bundles: `r`
/// copies of each clique followed by empty bundles. Fails when the cliques
/// need more than `m` copies, i.e. when the representative inequality with
/// one item per clique is violated.
pub fn decompose_scaled_binary(
    graph: &ValueGraph,
    a: &GPoint,
    r: i64,
    m: usize,
) -> Result<Vec<Bundle>> {
    let dec = clique_decompose(graph, a, r)?;
    let reps: Vec<usize> = dec
        .parts
        .iter()
        .map(|p| p.clique.items().next().unwrap())
        .collect();
    if !representative_inequality_holds(graph, a, &reps, m as i64)? {
        return Err(Error::CapExceeded {
            what: "clique copies",
            value: dec.total_multiplicity() as usize,
            cap: m,
        });
    }
    let mut bundles = dec.expand();
    bundles.resize(m, Bundle::EMPTY);
    Ok(bundles)
}

/// The point with `a_i = bundle_i` and `a_ij = min(bundle_i, bundle_j)`,
/// together with its decomposition into nested cliques: for the distinct
/// nonzero levels `t_1 < … < t_s`, `t_l − t_{l−1}` copies of
/// `{i : bundle_i >= t_l}`, then `m − t_s` empty parts.
pub fn nested_chain_point(
    graph: &ValueGraph,
    bundle: &[i64],
    m: usize,
) -> Result<(GPoint, CliqueDecomposition)> {
    if !graph.is_complete() {
        return Err(Error::NotComplete);
    }
    if bundle.len() != graph.n() {
        return Err(Error::DimensionMismatch {
            what: "bundle",
            expected: graph.n(),
            got: bundle.len(),
        });
    }
    for (item, &value) in bundle.iter().enumerate() {
        if value < 0 {
            return Err(Error::NegativeCoordinate { coord: item });
        }
        if value as u64 > m as u64 {
            return Err(Error::EntryExceedsM { item, value, m });
        }
    }
    let mut coords = bundle.to_vec();
    coords.resize(graph.d(), 0);
    for (c, i, j) in graph.edge_coords() {
        coords[c] = bundle[i].min(bundle[j]);
    }

    let mut levels: Vec<i64> = bundle.iter().copied().filter(|&t| t > 0).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut parts = Vec::with_capacity(levels.len() + 1);
    let mut prev = 0;
    for &t in &levels {
        parts.push(CliquePart {
            multiplicity: (t - prev) as u64,
            clique: Bundle::from_items((0..graph.n()).filter(|&i| bundle[i] >= t)),
        });
        prev = t;
    }
    if (prev as usize) < m {
        parts.push(CliquePart {
            multiplicity: (m as i64 - prev) as u64,
            clique: Bundle::EMPTY,
        });
    }
    Ok((GPoint(coords), CliqueDecomposition { parts }))
}

/// Lazily yields every multiset of `m` vertices of P(G) summing to `a`,
/// each once, as a nondecreasing (by bitmask) list of bundles.
pub struct Decompositions {
    cands: Vec<(Bundle, Vec<i64>)>,
    edges: Vec<(usize, usize, usize)>,
    n: usize,
    m: usize,
    residual: Vec<i64>,
    chosen: Vec<usize>,
    cursor: Vec<usize>,
    done: bool,
}

impl Decompositions {
    fn feasible(&self, idx: usize, remaining: i64) -> bool {
        let q = &self.cands[idx].1;
        let r = &self.residual;
        for (c, (&rc, &qc)) in r.iter().zip(q).enumerate() {
            let left = rc - qc;
            if left < 0 || (c < self.n && left > remaining) {
                return false;
            }
            if remaining == 0 && left != 0 {
                return false;
            }
        }
        // edge residual bounded by endpoint residuals
        for &(c, i, j) in &self.edges {
            let left = r[c] - q[c];
            if left > (r[i] - q[i]).min(r[j] - q[j]) {
                return false;
            }
        }
        true
    }

    fn apply(&mut self, idx: usize, sign: i64) {
        for (r, q) in self.residual.iter_mut().zip(&self.cands[idx].1) {
            *r -= sign * q;
        }
    }

    fn backtrack(&mut self) {
        if let Some(idx) = self.chosen.pop() {
            self.apply(idx, -1);
        }
    }
}

impl Iterator for Decompositions {
    type Item = Vec<Bundle>;

    fn next(&mut self) -> Option<Vec<Bundle>> {
        if self.done {
            return None;
        }
        if self.m == 0 {
            self.done = true;
            return self.residual.iter().all(|&x| x == 0).then(Vec::new);
        }
        loop {
            let depth = self.chosen.len();
            if depth == self.m {
                let out = self.chosen.iter().map(|&k| self.cands[k].0).collect();
                self.backtrack();
                return Some(out);
            }
            let remaining = (self.m - depth - 1) as i64;
            let mut found = None;
            while self.cursor[depth] < self.cands.len() {
                let idx = self.cursor[depth];
                self.cursor[depth] += 1;
                if self.feasible(idx, remaining) {
                    found = Some(idx);
                    break;
                }
            }
            match found {
                Some(idx) => {
                    self.apply(idx, 1);
                    self.chosen.push(idx);
                    if depth + 1 < self.m {
                        self.cursor[depth + 1] = idx;
                    }
                }
                None => {
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.backtrack();
                }
            }
        }
    }
}

/// Every way to write `a` as a sum of `m` vertices of P(G), up to order.
pub fn enumerate_decompositions(
    graph: &ValueGraph,
    a: &GPoint,
    m: usize,
    caps: &Caps,
) -> Result<Decompositions> {
    caps.check_n(graph.n())?;
    caps.check_m(m)?;
    graph.check_len("point", a.len())?;
    if let Some(coord) = a.coords().iter().position(|&x| x < 0) {
        return Err(Error::NegativeCoordinate { coord });
    }
    let cands = Bundle::full(graph.n())
        .subsets()
        .map(|s| (s, char_vector_unchecked(s, graph).0))
        .collect();
    Ok(Decompositions {
        cands,
        edges: graph.edge_coords().collect(),
        n: graph.n(),
        m,
        residual: a.0.clone(),
        chosen: Vec::with_capacity(m),
        cursor: vec![0; m],
        done: false,
    })
}

/// Advances `v` to the next lexicographic permutation, skipping
/// duplicates; returns false after the last one.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Groups equal bundles: `(bundle, count)` in ascending bundle order.
pub(crate) fn multiplicities(bundles: &[Bundle]) -> Vec<(Bundle, usize)> {
    let mut map = BTreeMap::new();
    for &b in bundles {
        *map.entry(b).or_insert(0) += 1;
    }
    map.into_iter().collect()
}
