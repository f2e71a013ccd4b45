use crate::assignment::FlowNetwork;
use crate::error::{Error, Result};
use crate::model::{project, Bundle, GPoint, Valuation, ValueGraph};
use crate::polytope::{clique_decompose, enumerate_decompositions, multiplicities};

use super::{ce_price_at_point, CeResult, SolveOptions};

/// Every agent bids on a clique and the supports together cover `[n]`.
/// Returns the supports.
pub fn check_covering(graph: &ValueGraph, vs: &[Valuation]) -> Result<Vec<Bundle>> {
    let mut supports = Vec::with_capacity(vs.len());
    for (agent, v) in vs.iter().enumerate() {
        v.check(graph)?;
        if !v.is_clique_supported(graph) {
            return Err(Error::NotCliqueSupport { agent });
        }
        supports.push(v.support(graph));
    }
    let covered = supports.iter().fold(Bundle::EMPTY, |acc, &s| acc.union(s));
    if let Some(item) = (0..graph.n()).find(|&i| !covered.contains(i)) {
        return Err(Error::NotCovering { item });
    }
    Ok(supports)
}

/// Every positive edge coordinate of `a` lies inside some support.
pub fn check_compatible(graph: &ValueGraph, supports: &[Bundle], a: &GPoint) -> Result<()> {
    graph.check_len("point", a.len())?;
    for (c, i, j) in graph.edge_coords() {
        if a.coords()[c] > 0 && !supports.iter().any(|s| s.contains(i) && s.contains(j)) {
            return Err(Error::Incompatible(i, j));
        }
    }
    Ok(())
}

/// For supply in `{0,r}^n`: assign each supplied item to the first agent
/// whose support holds it and return `r · Σ_b χ(K_{V^b})`.
pub fn covering_point(graph: &ValueGraph, vs: &[Valuation], supply: &[i64]) -> Result<GPoint> {
    let supports = check_covering(graph, vs)?;
    if supply.len() != graph.n() {
        return Err(Error::DimensionMismatch {
            what: "supply",
            expected: graph.n(),
            got: supply.len(),
        });
    }
    let r = supply.iter().copied().find(|&x| x != 0).unwrap_or(0);
    if r < 0 || supply.iter().any(|&x| x != 0 && x != r) {
        return Err(Error::SupplyNotUniform);
    }
    let mut parts = vec![Bundle::EMPTY; vs.len()];
    for i in (0..graph.n()).filter(|&i| supply[i] != 0) {
        let b = supports.iter().position(|s| s.contains(i)).unwrap();
        parts[b].insert(i);
    }
    let mut a = GPoint::zero(graph.d());
    for part in parts {
        a += &crate::model::char_vector(part, graph)?.scaled(r);
    }
    Ok(a)
}

/// Finds a way to write `a` as `m` vertices of P(G) with each one inside a
/// distinct agent's support, as one bundle per agent.
pub fn support_assignment(
    graph: &ValueGraph,
    supports: &[Bundle],
    a: &GPoint,
    opts: &SolveOptions,
) -> Result<Option<Vec<Bundle>>> {
    let m = supports.len();
    for parts in enumerate_decompositions(graph, a, m, &opts.caps)? {
        let groups = multiplicities(&parts);
        // source, agents, groups, sink
        let sink = 1 + m + groups.len();
        let mut net = FlowNetwork::new(sink + 1, 0, sink);
        for b in 0..m {
            net.add_arc(0, 1 + b, 1);
        }
        for (b, s) in supports.iter().enumerate() {
            for (k, (part, _)) in groups.iter().enumerate() {
                if part.is_subset(*s) {
                    net.add_arc(1 + b, 1 + m + k, 1);
                }
            }
        }
        for (k, &(_, count)) in groups.iter().enumerate() {
            net.add_arc(1 + m + k, sink, count as i64);
        }
        if net.max_flow() == m as i64 {
            let mut out = vec![Bundle::EMPTY; m];
            for arc in net.arcs() {
                if arc.flow == 1 && (1..=m).contains(&arc.from) && arc.to != sink {
                    out[arc.from - 1] = groups[arc.to - 1 - m].0;
                }
            }
            return Ok(Some(out));
        }
    }
    Ok(None)
}

/// Runs the covering checks on `a` and then the CE program there.
pub fn ce_for_covering(
    graph: &ValueGraph,
    vs: &[Valuation],
    supply: &[i64],
    a: &GPoint,
    opts: &SolveOptions,
) -> Result<CeResult> {
    let supports = check_covering(graph, vs)?;
    check_compatible(graph, &supports, a)?;
    if project(a, graph) != supply {
        return Err(Error::SupplyMismatch);
    }
    let r = supply.iter().copied().find(|&x| x != 0).unwrap_or(0);
    if supply.iter().any(|&x| x != 0 && x != r) {
        return Err(Error::SupplyNotUniform);
    }
    if r > 0 {
        clique_decompose(graph, a, r)?;
    }
    if support_assignment(graph, &supports, a, opts)?.is_none() {
        return Err(Error::NoSupportAssignment);
    }
    ce_price_at_point(graph, vs, a, opts)
}
