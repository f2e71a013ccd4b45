//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use quadprice::cli::{self, corpus, ResultFile, EXIT_NOT_FOUND, EXIT_OK};
use quadprice::demand::{candidate_points, demand_set, verify_ce, verify_pe};
use quadprice::model::{
    char_vector, project, rat, Allocation, Bundle, ExtRational, GPoint, PriceVector, Rational,
    Valuation, ValueGraph,
};
use quadprice::polytope::{
    enumerate_decompositions, minkowski_contains, nested_chain_point, vertex_sum_contains, Caps,
    Face,
};
use quadprice::pricing::{
    big_m, ce_for_covering, ce_price_at_point, optimal_ce, CeStatus, SolveOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CUTLERY_SOLVE_LIMIT: Duration = Duration::from_secs(1);
const CUTLERY_NEGATIVE_LIMIT: Duration = Duration::from_secs(10);
const HOUSE_LIMIT: Duration = Duration::from_secs(1);
const IDP_LIMIT: Duration = Duration::from_secs(30);
const CLIQUE_SUITE_SIZE: usize = 200;
const NESTED_SUITE_SIZE: usize = 200;
const COVERING_SUITE_SIZE: usize = 100;
const SHIFT_SUITE_SIZE: usize = 100;
const ORACLE_DRAWS: usize = 4;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(format!("{:.3}s", t.as_secs_f64()))
}

fn cutlery_solve() -> Outcome {
    let start = Instant::now();
    let (code, out) = cli::run(["quadprice", "solve", "--corpus", "cutlery", "--json"]);
    ensure(code == EXIT_OK, || format!("exit {code}: {out}"))?;
    let r: ResultFile = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(r.status == "found", || format!("status {}", r.status))?;
    ensure(r.revenue.as_deref() == Some("1"), || {
        format!("revenue {:?}", r.revenue)
    })?;
    let t = within(start, CUTLERY_SOLVE_LIMIT)?;
    Ok(format!("revenue 1 in {t}"))
}

/// Every allocation of `supply` over `n` items to `m` agents.
fn all_allocations(n: usize, m: usize, supply: &[i64]) -> Vec<Allocation> {
    let per = 1usize << n;
    (0..per.pow(m as u32))
        .filter_map(|mut code| {
            let bundles: Vec<Bundle> = (0..m)
                .map(|_| {
                    let s = Bundle::from_mask((code % per) as u64);
                    code /= per;
                    s
                })
                .collect();
            let counts: Vec<i64> = (0..n)
                .map(|i| bundles.iter().filter(|s| s.contains(i)).count() as i64)
                .collect();
            (counts == supply).then(|| Allocation::new(bundles))
        })
        .collect()
}

fn cutlery_negative() -> Outcome {
    let start = Instant::now();
    let inst = corpus("cutlery").map_err(|e| e.to_string())?;
    let (g, vs, supply) = (&inst.graph, &inst.valuations, &inst.supply);
    let caps = Caps::default();
    let opts = SolveOptions::default();
    let best = optimal_ce(g, vs, supply, &opts).map_err(|e| e.to_string())?;
    let price = best.solution.ok_or("no optimal CE")?.price;
    let mut ce_at_price = 0;
    for alloc in all_allocations(3, 3, supply) {
        let v = verify_pe(g, vs, &alloc, &price, supply, &caps).map_err(|e| e.to_string())?;
        if v.ce.holds() {
            ce_at_price += 1;
            ensure(!v.holds(), || format!("{alloc} is a PE at {price}"))?;
        }
    }
    let mut points_checked = 0;
    for a in candidate_points(g, supply, 3, &caps).map_err(|e| e.to_string())? {
        let r = ce_price_at_point(g, vs, &a, &opts).map_err(|e| e.to_string())?;
        if let Some(sol) = r.solution {
            points_checked += 1;
            let v = verify_pe(g, vs, &sol.allocation, &sol.price, supply, &caps)
                .map_err(|e| e.to_string())?;
            ensure(v.ce.holds() && !v.holds(), || {
                format!("CE at {a} with price {} passes PE", sol.price)
            })?;
        }
    }
    let (code, out) = cli::run(["quadprice", "solve", "--corpus", "cutlery", "--walrasian"]);
    ensure(
        code == EXIT_NOT_FOUND && out.contains("no Walrasian equilibrium"),
        || format!("walrasian exit {code}: {out}"),
    )?;
    let w = optimal_ce(
        g,
        vs,
        supply,
        &SolveOptions {
            walrasian: true,
            ..opts
        },
    )
    .map_err(|e| e.to_string())?;
    ensure(w.status == CeStatus::NoPointFound, || {
        format!("{:?}", w.status)
    })?;
    let t = within(start, CUTLERY_NEGATIVE_LIMIT)?;
    Ok(format!(
        "{ce_at_price} CE allocations at the optimal price and {points_checked} point optima all fail PE; no Walrasian price; {t}"
    ))
}

fn shifted_cutlery() -> Outcome {
    let alloc = r#"{"allocation": [[1,2,3],[],[]], "price": ["3","3","1","0","0","0"]}"#;
    let (code, out) = cli::run([
        "quadprice",
        "verify",
        "--corpus",
        "cutlery-shifted",
        "--alloc",
        alloc,
        "--pe",
    ]);
    ensure(code == EXIT_OK && out.contains("PE pass"), || {
        format!("verify exit {code}: {out}")
    })?;
    let inst = corpus("cutlery-shifted").map_err(|e| e.to_string())?;
    let g = &inst.graph;
    let p = PriceVector::from_ints(&[3, 3, 1, 0, 0, 0]);
    let a = char_vector(Bundle::full(3), g).map_err(|e| e.to_string())?;
    ensure(p.pair(&a) == rat(7), || format!("revenue {}", p.pair(&a)))?;
    let opts = SolveOptions {
        walrasian: true,
        ..SolveOptions::default()
    };
    let w = optimal_ce(g, &inst.valuations, &inst.supply, &opts).map_err(|e| e.to_string())?;
    let sol = w.solution.ok_or("no Walrasian equilibrium found")?;
    ensure(sol.price.is_linear(g), || {
        format!("price {} not linear", sol.price)
    })?;
    Ok(format!("PE at revenue 7; linear price {}", sol.price))
}

fn faces_of(inst: &cli::Instance) -> Result<Vec<Face>, String> {
    inst.faces
        .as_ref()
        .ok_or("no faces")?
        .iter()
        .map(|f| Face::from_bundles(&inst.graph, f).map_err(|e| e.to_string()))
        .collect()
}

fn house() -> Outcome {
    let start = Instant::now();
    let inst = corpus("house").map_err(|e| e.to_string())?;
    let faces = faces_of(&inst)?;
    let g = &inst.graph;
    let mut coords = vec![1; 5];
    coords.resize(g.d(), 0);
    let a = GPoint(coords);
    let mink = minkowski_contains(g, &faces, &a).map_err(|e| e.to_string())?;
    let vsum = vertex_sum_contains(g, &faces, &a).map_err(|e| e.to_string())?;
    ensure(mink, || "point not in the Minkowski sum".into())?;
    ensure(vsum.is_none(), || format!("vertex choice {vsum:?} found"))?;
    let t = within(start, HOUSE_LIMIT)?;
    Ok(format!("in Minkowski sum, not a vertex sum; {t}"))
}

fn idp() -> Outcome {
    let start = Instant::now();
    let inst = corpus("idp-k4").map_err(|e| e.to_string())?;
    let g = &inst.graph;
    let a = GPoint(vec![2, 2, 2, 2, 1, 1, 1, 1, 1, 1]);
    let count = enumerate_decompositions(g, &a, 4, &Caps::default())
        .map_err(|e| e.to_string())?
        .count();
    ensure(count == 0, || format!("{count} decompositions"))?;
    let faces = faces_of(&inst)?;
    ensure(
        minkowski_contains(g, &faces, &a).map_err(|e| e.to_string())?,
        || "point not in the Minkowski sum of the four edges".into(),
    )?;
    let t = within(start, IDP_LIMIT)?;
    Ok(format!(
        "no decomposition into 4 vertices, in the Minkowski sum; {t}"
    ))
}

fn random_weights(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64) -> Valuation {
    Valuation::from_ints(&(0..d).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>())
}

fn check_found(
    g: &ValueGraph,
    vs: &[Valuation],
    a: &GPoint,
    opts: &SolveOptions,
) -> Result<quadprice::pricing::CeSolution, String> {
    let r = ce_price_at_point(g, vs, a, opts).map_err(|e| format!("{a}: {e}"))?;
    let sol = r.solution.ok_or_else(|| format!("{a}: {:?}", r.status))?;
    let verdict =
        verify_ce(g, vs, &sol.allocation, &sol.price, &opts.caps).map_err(|e| e.to_string())?;
    ensure(verdict.holds(), || {
        format!("{a}: verify_ce rejects the result")
    })?;
    ensure(sol.price.pair(a) == sol.revenue, || {
        format!("{a}: revenue mismatch")
    })?;
    ensure(
        sol.allocation.aggregate(g).map_err(|e| e.to_string())? == *a,
        || format!("{a}: allocation does not sum to the point"),
    )?;
    Ok(sol)
}

fn disjoint_cliques() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let opts = SolveOptions::default();
    for case in 0..CLIQUE_SUITE_SIZE {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=5);
        let r = rng.gen_range(1..=m) as i64;
        let g = ValueGraph::complete(n).unwrap();
        let vs: Vec<_> = (0..m)
            .map(|_| random_weights(&mut rng, g.d(), -5, 5))
            .collect();
        let blocks = (m as i64 / r) as usize;
        let mut cliques = vec![Bundle::EMPTY; blocks];
        for i in 0..n {
            if rng.gen_bool(0.7) {
                cliques[rng.gen_range(0..blocks)].insert(i);
            }
        }
        let mut a = GPoint::zero(g.d());
        for c in cliques {
            a += &char_vector(c, &g).unwrap().scaled(r);
        }
        check_found(&g, &vs, &a, &opts).map_err(|e| format!("case {case}: {e}"))?;
    }
    Ok(format!(
        "{CLIQUE_SUITE_SIZE}/{CLIQUE_SUITE_SIZE} found and verified"
    ))
}

fn nested_chains() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let opts = SolveOptions::default();
    for case in 0..NESTED_SUITE_SIZE {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=5);
        let g = ValueGraph::complete(n).unwrap();
        let vs: Vec<_> = (0..m)
            .map(|_| random_weights(&mut rng, g.d(), -5, 5))
            .collect();
        let supply: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=m as i64)).collect();
        let (a, _) = nested_chain_point(&g, &supply, m).unwrap();
        check_found(&g, &vs, &a, &opts)
            .map_err(|e| format!("case {case} supply {supply:?}: {e}"))?;
    }
    Ok(format!(
        "{NESTED_SUITE_SIZE}/{NESTED_SUITE_SIZE} found and verified"
    ))
}

fn clique_valuation(rng: &mut ChaCha8Rng, g: &ValueGraph, clique: Bundle) -> Valuation {
    let mut w = vec![ExtRational::NegInfinity; g.d()];
    for i in clique.items() {
        w[i] = rat(rng.gen_range(-5..=5)).into();
    }
    for (c, i, j) in g.edge_coords() {
        if clique.contains(i) && clique.contains(j) {
            w[c] = rat(rng.gen_range(-5..=5)).into();
        }
    }
    Valuation::new(w)
}

/// Bundles maximizing `w̃(S) − p(S)` over all of `[n]`.
fn penalized_demand(g: &ValueGraph, w: &[Rational], p: &PriceVector) -> Vec<Bundle> {
    let util = |s: Bundle| -> Rational {
        let chi = char_vector(s, g).unwrap();
        quadprice::model::dot(w, &chi) - p.pair(&chi)
    };
    let best = Bundle::full(g.n()).subsets().map(util).max().unwrap();
    Bundle::full(g.n())
        .subsets()
        .filter(|&s| util(s) == best)
        .collect()
}

fn covering() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let opts = SolveOptions::default();
    for case in 0..COVERING_SUITE_SIZE {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=4);
        let g = ValueGraph::complete(n).unwrap();
        let mut supports: Vec<Bundle> = (0..m)
            .map(|_| Bundle::from_mask(rng.gen_range(1..1u64 << n)))
            .collect();
        for i in 0..n {
            if !supports.iter().any(|s| s.contains(i)) {
                let b = rng.gen_range(0..m);
                supports[b].insert(i);
            }
        }
        let vs: Vec<_> = supports
            .iter()
            .map(|&s| clique_valuation(&mut rng, &g, s))
            .collect();
        let supply: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
        let mut parts = vec![Bundle::EMPTY; m];
        for i in (0..n).filter(|&i| supply[i] == 1) {
            let holders: Vec<usize> = (0..m).filter(|&b| supports[b].contains(i)).collect();
            parts[holders[rng.gen_range(0..holders.len())]].insert(i);
        }
        let mut a = GPoint::zero(g.d());
        for &p in &parts {
            a += &char_vector(p, &g).unwrap();
        }
        let fail = |e: String| format!("case {case} supports {supports:?} point {a}: {e}");
        let r = ce_for_covering(&g, &vs, &supply, &a, &opts).map_err(|e| fail(e.to_string()))?;
        let sol = r.solution.ok_or_else(|| fail(format!("{:?}", r.status)))?;
        ensure(
            verify_ce(&g, &vs, &sol.allocation, &sol.price, &opts.caps)
                .unwrap()
                .holds(),
            || fail("verify_ce rejects".into()),
        )?;
        let big = big_m(&g, &vs).unwrap();
        for (b, v) in vs.iter().enumerate() {
            let s = sol.allocation.bundles[b];
            ensure(s.is_subset(supports[b]), || {
                fail(format!("agent {b} gets {s}"))
            })?;
            let ds = demand_set(&g, b, v, &sol.price, &opts.caps).unwrap();
            for t in ds.bundles {
                ensure(t.is_subset(supports[b]), || {
                    fail(format!("agent {b} demands {t}"))
                })?;
            }
            for t in penalized_demand(&g, &v.with_penalty(&big), &sol.price) {
                ensure(t.is_subset(supports[b]), || {
                    fail(format!("agent {b} demands {t} under the penalty"))
                })?;
            }
        }
        ensure(project(&a, &g) == supply, || fail("projection".into()))?;
    }
    Ok(format!(
        "{COVERING_SUITE_SIZE}/{COVERING_SUITE_SIZE} found; every demanded bundle inside its support"
    ))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    quadprice::model::ratio(rng.gen_range(-12..=12), rng.gen_range(1..=4))
}

fn shift_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let caps = Caps::default();
    for case in 0..SHIFT_SUITE_SIZE {
        let n = rng.gen_range(1..=5);
        let g = ValueGraph::complete(n).unwrap();
        let d = g.d();
        let v = Valuation::new(
            (0..d)
                .map(|_| {
                    if rng.gen_bool(0.1) {
                        ExtRational::NegInfinity
                    } else {
                        random_rational(&mut rng).into()
                    }
                })
                .collect(),
        );
        let p = PriceVector::new((0..d).map(|_| random_rational(&mut rng)).collect());
        let c: Vec<Rational> = (0..d).map(|_| random_rational(&mut rng)).collect();
        let before = demand_set(&g, 0, &v, &p, &caps).unwrap();
        let after = demand_set(&g, 0, &v.shift(&c), &p.add(&c), &caps).unwrap();
        ensure(before.bundles == after.bundles, || {
            format!("case {case}: {:?} vs {:?}", before.bundles, after.bundles)
        })?;
    }
    Ok(format!(
        "{SHIFT_SUITE_SIZE}/{SHIFT_SUITE_SIZE} demand sets unchanged"
    ))
}

fn all_supplies(n: usize, m: usize) -> Vec<Vec<i64>> {
    let base = m as i64 + 1;
    (0..base.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let x = code % base;
                    code /= base;
                    x
                })
                .collect()
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let opts = SolveOptions::default();
    let mut instances = 0;
    let mut weight_sets: Vec<(usize, Vec<Vec<i64>>)> = vec![
        (
            3,
            vec![
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 0, 1],
            ],
        ),
        (
            3,
            vec![
                vec![1, 1, 1, 2, 1, 1],
                vec![1, 1, 1, 1, 2, 1],
                vec![1, 1, 1, 1, 1, 2],
            ],
        ),
    ];
    for n in 1..=3 {
        for m in 1..=3 {
            for _ in 0..ORACLE_DRAWS {
                let d = common::kn_dim(n);
                let ws = (0..m)
                    .map(|_| (0..d).map(|_| rng.gen_range(-3..=3)).collect())
                    .collect();
                weight_sets.push((n, ws));
            }
        }
    }
    for (n, ws) in &weight_sets {
        let g = ValueGraph::complete(*n).unwrap();
        let vs: Vec<_> = ws.iter().map(|w| Valuation::from_ints(w)).collect();
        for supply in all_supplies(*n, ws.len()) {
            instances += 1;
            let ours = optimal_ce(&g, &vs, &supply, &opts).map_err(|e| e.to_string())?;
            let oracle = common::brute_force_revenue(*n, ws, &supply);
            let ours_rev = ours.revenue().cloned();
            ensure(ours_rev == oracle, || {
                format!("weights {ws:?} supply {supply:?}: solver {ours_rev:?}, oracle {oracle:?}")
            })?;
        }
    }
    Ok(format!("{instances} instances agree exactly"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("cutlery optimal revenue", cutlery_solve),
        (
            "cutlery has no PE and no Walrasian equilibrium",
            cutlery_negative,
        ),
        ("shifted cutlery PE and Walrasian price", shifted_cutlery),
        ("house graph Minkowski sum vs vertex sum", house),
        ("IDP failure on K4", idp),
        ("disjoint-clique points always clear", disjoint_cliques),
        ("nested-chain points always clear", nested_chains),
        ("covering valuations clear inside supports", covering),
        ("demand sets are shift invariant", shift_invariance),
        ("optimal CE matches brute-force oracle", oracle_equivalence),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| Err(format!("panicked: {e:?}")));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
