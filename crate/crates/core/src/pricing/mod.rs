//! Competitive-equilibrium prices: the per-point linear program, the search
//! for a revenue-optimal equilibrium and the covering-valuations driver.

mod covering;
pub mod lp;

pub use covering::{
    ce_for_covering, check_compatible, check_covering, covering_point, support_assignment,
};
pub use lp::{lp_solve, Constraint, LinearProgram, LpOutcome, Relation, VarKind};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::demand::{candidate_points, check_supply, verify_ce};
use crate::error::{Error, Result};
use crate::model::{
    char_vector_unchecked, rat, Allocation, Bundle, ExtRational, GPoint, PriceVector, Rational,
    Valuation, ValueGraph,
};
use crate::polytope::{enumerate_decompositions, next_permutation, Caps};

/// How many times big-M may be doubled before giving up.
const MAX_M_DOUBLINGS: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub caps: Caps,
    /// Fix every edge price to zero.
    pub walrasian: bool,
    /// Worker threads for the point search; `1` runs inline.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            caps: Caps::default(),
            walrasian: false,
            jobs: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CeStatus {
    Found,
    InfeasibleAtPoint,
    NoPointFound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeSolution {
    pub allocation: Allocation,
    pub price: PriceVector,
    pub revenue: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeResult {
    pub status: CeStatus,
    pub point: Option<GPoint>,
    pub solution: Option<CeSolution>,
}

impl CeResult {
    pub fn is_found(&self) -> bool {
        self.status == CeStatus::Found
    }

    pub fn revenue(&self) -> Option<&Rational> {
        self.solution.as_ref().map(|s| &s.revenue)
    }

    fn infeasible(point: &GPoint) -> Self {
        CeResult {
            status: CeStatus::InfeasibleAtPoint,
            point: Some(point.clone()),
            solution: None,
        }
    }
}

/// `1 + (d+1)(1 + max finite |w|)` over all agents.
pub fn big_m(graph: &ValueGraph, vs: &[Valuation]) -> Result<Rational> {
    let max = vs
        .iter()
        .filter_map(Valuation::max_abs_finite)
        .max()
        .ok_or(Error::NoFiniteWeight)?;
    Ok(Rational::one() + rat(graph.d() as i64 + 1) * (Rational::one() + max))
}

/// Vertex data shared by every LP built at one point.
struct VertexTable {
    bundles: Vec<Bundle>,
    chars: Vec<GPoint>,
}

impl VertexTable {
    fn new(graph: &ValueGraph) -> Self {
        let bundles: Vec<Bundle> = Bundle::full(graph.n()).subsets().collect();
        let chars = bundles
            .iter()
            .map(|&s| char_vector_unchecked(s, graph))
            .collect();
        VertexTable { bundles, chars }
    }

    fn char_of(&self, s: Bundle) -> &GPoint {
        // subsets of the full bundle are listed in mask order
        &self.chars[s.mask() as usize]
    }
}

fn weighted(w: &[Rational], q: &GPoint) -> Rational {
    w.iter()
        .zip(q.coords())
        .filter(|(_, &x)| x != 0)
        .map(|(wi, &x)| wi * rat(x))
        .sum()
}

/// The CE linear program for a fixed allocation: price variables `p`, one
/// row `⟨p, χS − χT⟩ ≤ w̃(S) − w̃(T)` per agent and alternative bundle `T`,
/// objective `⟨p, a⟩`.
fn ce_lp(
    graph: &ValueGraph,
    table: &VertexTable,
    weights: &[Vec<Rational>],
    alloc: &[Bundle],
    a: &GPoint,
    walrasian: bool,
) -> LinearProgram {
    let d = graph.d();
    let mut lp = LinearProgram::new(d);
    lp.maximize(a.coords().iter().map(|&x| rat(x)).collect());
    if walrasian {
        for c in graph.n()..d {
            lp.fix(c, Rational::zero());
        }
    }
    let mut seen: Vec<(Bundle, &[Rational])> = Vec::new();
    for (w, &s) in weights.iter().zip(alloc) {
        if seen.iter().any(|(t, v)| *t == s && *v == w.as_slice()) {
            continue;
        }
        seen.push((s, w));
        let chi_s = table.char_of(s);
        let w_s = weighted(w, chi_s);
        for (&t, chi_t) in table.bundles.iter().zip(&table.chars) {
            if t == s {
                continue;
            }
            let diff = chi_s - chi_t;
            let coeffs = diff.coords().iter().map(|&x| rat(x)).collect();
            lp.add_constraint(coeffs, Relation::Le, &w_s - weighted(w, chi_t));
        }
    }
    lp
}

fn touches_penalty(graph: &ValueGraph, vs: &[Valuation], alloc: &[Bundle]) -> bool {
    vs.iter()
        .zip(alloc)
        .any(|(v, &s)| !v.value(graph, s).is_finite())
}

/// The welfare-maximizing allocations of `a` under weights `w̃`, in
/// lexicographic order of (sorted parts, agent assignment).
fn max_welfare_allocations(
    graph: &ValueGraph,
    table: &VertexTable,
    weights: &[Vec<Rational>],
    a: &GPoint,
    caps: &Caps,
) -> Result<Option<(Rational, Vec<Vec<Bundle>>)>> {
    let mut best: Option<(Rational, Vec<Vec<Bundle>>)> = None;
    for mut parts in enumerate_decompositions(graph, a, weights.len(), caps)? {
        loop {
            let total: Rational = parts
                .iter()
                .zip(weights)
                .map(|(&s, w)| weighted(w, table.char_of(s)))
                .sum();
            match &mut best {
                Some((w, list)) if total == *w => list.push(parts.clone()),
                Some((w, _)) if total < *w => {}
                _ => best = Some((total, vec![parts.clone()])),
            }
            if !next_permutation(&mut parts) {
                break;
            }
        }
    }
    Ok(best)
}

/// Maximizes seller revenue `⟨p, a⟩` over prices supporting some
/// allocation of `a` as a competitive equilibrium.
pub fn ce_price_at_point(
    graph: &ValueGraph,
    vs: &[Valuation],
    a: &GPoint,
    opts: &SolveOptions,
) -> Result<CeResult> {
    graph.check_len("point", a.len())?;
    for v in vs {
        v.check(graph)?;
    }
    let table = VertexTable::new(graph);
    let all_finite = vs.iter().all(Valuation::is_finite);
    let mut m_value = if all_finite {
        Rational::zero()
    } else {
        big_m(graph, vs)?
    };
    for _ in 0..=MAX_M_DOUBLINGS {
        let weights: Vec<Vec<Rational>> = vs.iter().map(|v| v.with_penalty(&m_value)).collect();
        let Some((welfare, allocs)) =
            max_welfare_allocations(graph, &table, &weights, a, &opts.caps)?
        else {
            return Ok(CeResult::infeasible(a));
        };
        if allocs.iter().all(|al| touches_penalty(graph, vs, al)) {
            if !has_finite_allocation(graph, vs, a, &opts.caps)? {
                return Ok(CeResult::infeasible(a));
            }
            m_value = &m_value * rat(2);
            continue;
        }
        let mut best: Option<(Rational, Vec<Bundle>, Vec<Rational>)> = None;
        for alloc in allocs {
            let lp = ce_lp(graph, &table, &weights, &alloc, a, opts.walrasian);
            if let LpOutcome::Optimal { value, solution } = lp.solve() {
                if best.as_ref().is_none_or(|(r, _, _)| value > *r) {
                    let done = value == welfare;
                    best = Some((value, alloc, solution));
                    if done {
                        break;
                    }
                }
            }
        }
        let Some((revenue, alloc, price)) = best else {
            return Ok(CeResult::infeasible(a));
        };
        if touches_penalty(graph, vs, &alloc) {
            m_value = &m_value * rat(2);
            continue;
        }
        let price = if opts.walrasian {
            PriceVector::new(price).into_linear(graph)?
        } else {
            PriceVector::new(price)
        };
        let allocation = Allocation::new(alloc);
        let verdict = verify_ce(graph, vs, &allocation, &price, &opts.caps)?;
        if !verdict.holds() {
            return Err(Error::Internal(format!(
                "price {price} fails verification for {allocation}"
            )));
        }
        return Ok(CeResult {
            status: CeStatus::Found,
            point: Some(a.clone()),
            solution: Some(CeSolution {
                allocation,
                price,
                revenue,
            }),
        });
    }
    Err(Error::Internal("big-M doubling did not converge".into()))
}

fn has_finite_allocation(
    graph: &ValueGraph,
    vs: &[Valuation],
    a: &GPoint,
    caps: &Caps,
) -> Result<bool> {
    for mut parts in enumerate_decompositions(graph, a, vs.len(), caps)? {
        loop {
            if !touches_penalty(graph, vs, &parts) {
                return Ok(true);
            }
            if !next_permutation(&mut parts) {
                break;
            }
        }
    }
    Ok(false)
}

/// The revenue-maximal competitive equilibrium over every decomposable
/// point projecting to `supply`. Equal revenues go to the smallest point.
pub fn optimal_ce(
    graph: &ValueGraph,
    vs: &[Valuation],
    supply: &[i64],
    opts: &SolveOptions,
) -> Result<CeResult> {
    check_supply(graph, supply, vs.len())?;
    let points = candidate_points(graph, supply, vs.len(), &opts.caps)?;
    let results: Vec<CeResult> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?;
        pool.install(|| {
            points
                .par_iter()
                .map(|a| ce_price_at_point(graph, vs, a, opts))
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        points
            .iter()
            .map(|a| ce_price_at_point(graph, vs, a, opts))
            .collect::<Result<Vec<_>>>()?
    };
    let best = results
        .into_iter()
        .filter(CeResult::is_found)
        .fold(None::<CeResult>, |acc, r| match acc {
            Some(b) if b.revenue() >= r.revenue() => Some(b),
            _ => Some(r),
        });
    match best {
        Some(r) => Ok(r),
        None => {
            debug_assert!(
                opts.walrasian || !graph.is_complete() || !vs.iter().all(Valuation::is_finite),
                "complete-graph valuations always admit a CE"
            );
            Ok(CeResult {
                status: CeStatus::NoPointFound,
                point: None,
                solution: None,
            })
        }
    }
}

/// Total true value of an allocation.
pub fn welfare(graph: &ValueGraph, vs: &[Valuation], alloc: &Allocation) -> ExtRational {
    vs.iter()
        .zip(&alloc.bundles)
        .fold(ExtRational::zero(), |acc, (v, &s)| {
            &acc + &v.value(graph, s)
        })
}
