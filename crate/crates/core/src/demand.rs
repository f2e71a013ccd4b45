//! Demand sets, aggregate welfare and the equilibrium verifiers.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{
    char_vector_unchecked, project, Allocation, Bundle, ExtRational, GPoint, PriceVector, Rational,
    Valuation, ValueGraph,
};
use crate::polytope::{enumerate_decompositions, next_permutation, Caps};
use crate::pricing::{optimal_ce, CeStatus, SolveOptions};

/// The utility-maximizing bundles of one agent at one price.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemandSet {
    pub agent: usize,
    pub price: PriceVector,
    /// Ascending by bitmask.
    pub bundles: Vec<Bundle>,
    pub utility: Rational,
}

impl DemandSet {
    pub fn contains(&self, s: Bundle) -> bool {
        self.bundles.binary_search(&s).is_ok()
    }
}

/// `v(S) − p(S)`, or −∞.
pub fn utility(graph: &ValueGraph, v: &Valuation, p: &PriceVector, s: Bundle) -> ExtRational {
    match v.value(graph, s) {
        ExtRational::Finite(val) => ExtRational::Finite(val - p.price_of(graph, s)),
        ExtRational::NegInfinity => ExtRational::NegInfinity,
    }
}

/// All bundles inside the finite support of `v` attaining maximal utility.
pub fn demand_set(
    graph: &ValueGraph,
    agent: usize,
    v: &Valuation,
    p: &PriceVector,
    caps: &Caps,
) -> Result<DemandSet> {
    v.check(graph)?;
    p.check(graph)?;
    let support = v.support(graph);
    caps.check_n(support.len())?;
    let mut best = Rational::from_integer(0.into());
    let mut bundles = vec![Bundle::EMPTY];
    for s in support.subsets().skip(1) {
        let ExtRational::Finite(u) = utility(graph, v, p, s) else {
            continue;
        };
        match u.cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = u;
                bundles.clear();
                bundles.push(s);
            }
            std::cmp::Ordering::Equal => bundles.push(s),
            std::cmp::Ordering::Less => {}
        }
    }
    Ok(DemandSet {
        agent,
        price: p.clone(),
        bundles,
        utility: best,
    })
}

/// Maximal total value over all ways to split `a` into one bundle per
/// agent, with a witnessing allocation; `None` when `a` is not a sum of
/// `vs.len()` vertices of P(G).
pub fn max_welfare(
    graph: &ValueGraph,
    vs: &[Valuation],
    a: &GPoint,
    caps: &Caps,
) -> Result<Option<(ExtRational, Allocation)>> {
    for v in vs {
        v.check(graph)?;
    }
    let mut best: Option<(ExtRational, Allocation)> = None;
    for mut parts in enumerate_decompositions(graph, a, vs.len(), caps)? {
        loop {
            let total = parts
                .iter()
                .zip(vs)
                .fold(ExtRational::zero(), |acc, (&s, v)| {
                    &acc + &v.value(graph, s)
                });
            if best.as_ref().is_none_or(|(w, _)| total > *w) {
                best = Some((total, Allocation::new(parts.clone())));
            }
            if !next_permutation(&mut parts) {
                break;
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentCheck {
    pub agent: usize,
    pub bundle: Bundle,
    pub utility: ExtRational,
    pub demand: DemandSet,
}

impl AgentCheck {
    pub fn satisfied(&self) -> bool {
        self.demand.contains(self.bundle)
    }

    /// A strictly better bundle when the agent is not satisfied.
    pub fn better_bundle(&self) -> Option<Bundle> {
        (!self.satisfied()).then(|| self.demand.bundles[0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeVerdict {
    pub agents: Vec<AgentCheck>,
}

impl CeVerdict {
    pub fn holds(&self) -> bool {
        self.agents.iter().all(AgentCheck::satisfied)
    }

    pub fn first_failure(&self) -> Option<&AgentCheck> {
        self.agents.iter().find(|c| !c.satisfied())
    }
}

/// Checks that every agent's bundle lies in their demand set at `p`.
pub fn verify_ce(
    graph: &ValueGraph,
    vs: &[Valuation],
    alloc: &Allocation,
    p: &PriceVector,
    caps: &Caps,
) -> Result<CeVerdict> {
    if alloc.agents() != vs.len() {
        return Err(Error::DimensionMismatch {
            what: "allocation",
            expected: vs.len(),
            got: alloc.agents(),
        });
    }
    let mut agents = Vec::with_capacity(vs.len());
    for (b, (v, &s)) in vs.iter().zip(&alloc.bundles).enumerate() {
        graph.check_bundle(s)?;
        agents.push(AgentCheck {
            agent: b,
            bundle: s,
            utility: utility(graph, v, p, s),
            demand: demand_set(graph, b, v, p, caps)?,
        });
    }
    Ok(CeVerdict { agents })
}

/// Every decomposable point (sum of `m` vertices of P(G)) projecting to
/// `supply`, ascending.
pub fn candidate_points(
    graph: &ValueGraph,
    supply: &[i64],
    m: usize,
    caps: &Caps,
) -> Result<Vec<GPoint>> {
    caps.check_n(graph.n())?;
    caps.check_m(m)?;
    check_supply(graph, supply, m)?;
    let cands: Vec<(Bundle, GPoint)> = Bundle::full(graph.n())
        .subsets()
        .map(|s| (s, char_vector_unchecked(s, graph)))
        .collect();
    let mut residual = supply.to_vec();
    let mut acc = GPoint::zero(graph.d());
    let mut out = BTreeSet::new();
    collect_points(&cands, 0, m, &mut residual, &mut acc, &mut out);
    Ok(out.into_iter().collect())
}

fn collect_points(
    cands: &[(Bundle, GPoint)],
    start: usize,
    remaining: usize,
    residual: &mut [i64],
    acc: &mut GPoint,
    out: &mut BTreeSet<GPoint>,
) {
    if remaining == 0 {
        if residual.iter().all(|&x| x == 0) {
            out.insert(acc.clone());
        }
        return;
    }
    let left = (remaining - 1) as i64;
    for (idx, (s, q)) in cands.iter().enumerate().skip(start) {
        let ok = residual.iter().enumerate().all(|(i, &r)| {
            let after = r - s.contains(i) as i64;
            after >= 0 && after <= left
        });
        if !ok {
            continue;
        }
        for i in s.items() {
            residual[i] -= 1;
        }
        *acc += q;
        collect_points(cands, idx, remaining - 1, residual, acc, out);
        *acc = &*acc - q;
        for i in s.items() {
            residual[i] += 1;
        }
    }
}

pub(crate) fn check_supply(graph: &ValueGraph, supply: &[i64], m: usize) -> Result<()> {
    if supply.len() != graph.n() {
        return Err(Error::DimensionMismatch {
            what: "supply",
            expected: graph.n(),
            got: supply.len(),
        });
    }
    for (item, &value) in supply.iter().enumerate() {
        if value < 0 {
            return Err(Error::NegativeCoordinate { coord: item });
        }
        if value as u64 > m as u64 {
            return Err(Error::EntryExceedsM { item, value, m });
        }
    }
    Ok(())
}

/// The revenue-maximizing feasible aggregates at price `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SellerDemand {
    pub revenue: Rational,
    pub points: Vec<GPoint>,
}

impl SellerDemand {
    pub fn contains(&self, a: &GPoint) -> bool {
        self.points.binary_search(a).is_ok()
    }
}

pub fn seller_demand(
    graph: &ValueGraph,
    p: &PriceVector,
    supply: &[i64],
    m: usize,
    caps: &Caps,
) -> Result<SellerDemand> {
    p.check(graph)?;
    let points = candidate_points(graph, supply, m, caps)?;
    let mut best: Option<SellerDemand> = None;
    for a in points {
        let rev = p.pair(&a);
        match &mut best {
            Some(sd) if rev < sd.revenue => {}
            Some(sd) if rev == sd.revenue => sd.points.push(a),
            _ => {
                best = Some(SellerDemand {
                    revenue: rev,
                    points: vec![a],
                })
            }
        }
    }
    best.ok_or(Error::NoCandidatePoint)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeVerdict {
    pub ce: CeVerdict,
    pub revenue: Rational,
    pub seller: SellerDemand,
}

impl PeVerdict {
    pub fn seller_satisfied(&self) -> bool {
        self.revenue == self.seller.revenue
    }

    pub fn holds(&self) -> bool {
        self.ce.holds() && self.seller_satisfied()
    }
}

/// CE check plus the seller's revenue condition at `p`.
pub fn verify_pe(
    graph: &ValueGraph,
    vs: &[Valuation],
    alloc: &Allocation,
    p: &PriceVector,
    supply: &[i64],
    caps: &Caps,
) -> Result<PeVerdict> {
    let ce = verify_ce(graph, vs, alloc, p, caps)?;
    let aggregate = alloc.aggregate(graph)?;
    check_supply(graph, supply, vs.len())?;
    if project(&aggregate, graph) != supply {
        return Err(Error::SupplyMismatch);
    }
    let seller = seller_demand(graph, p, supply, vs.len(), caps)?;
    Ok(PeVerdict {
        ce,
        revenue: p.pair(&aggregate),
        seller,
    })
}

/// Searches for a Walrasian equilibrium (linear prices) at `supply`.
pub fn walrasian_exists(
    graph: &ValueGraph,
    vs: &[Valuation],
    supply: &[i64],
    opts: &SolveOptions,
) -> Result<Option<(PriceVector, Allocation)>> {
    let opts = SolveOptions {
        walrasian: true,
        ..opts.clone()
    };
    let res = optimal_ce(graph, vs, supply, &opts)?;
    Ok(match (res.status, res.solution) {
        (CeStatus::Found, Some(sol)) => Some((sol.price, sol.allocation)),
        _ => None,
    })
}
