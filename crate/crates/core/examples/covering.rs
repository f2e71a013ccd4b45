//! Agents who only bid on a clique of items. The point built from a
//! partition of the items inside the agents' cliques is always supported.

use quadprice::model::{rat, Bundle, ExtRational, Valuation, ValueGraph};
use quadprice::pricing::{ce_for_covering, covering_point, SolveOptions};

fn clique_bidder(g: &ValueGraph, clique: Bundle, weight: i64) -> Valuation {
    let mut w = vec![ExtRational::NegInfinity; g.d()];
    for i in clique.items() {
        w[i] = rat(weight).into();
    }
    for (c, i, j) in g.edge_coords() {
        if clique.contains(i) && clique.contains(j) {
            w[c] = rat(weight).into();
        }
    }
    Valuation::new(w)
}

fn main() -> quadprice::Result<()> {
    let g = ValueGraph::complete(4)?;
    let vs = vec![
        clique_bidder(&g, Bundle::from_items([0, 1]), 2),
        clique_bidder(&g, Bundle::from_items([1, 2, 3]), 1),
    ];
    let supply = [1, 1, 1, 1];
    let a = covering_point(&g, &vs, &supply)?;
    println!("point {a}");
    let r = ce_for_covering(&g, &vs, &supply, &a, &SolveOptions::default())?;
    let sol = r.solution.expect("covering points always clear");
    for (b, &s) in sol.allocation.bundles.iter().enumerate() {
        println!("agent {} bids on {} and gets {s}", b + 1, vs[b].support(&g));
    }
    println!("price {} revenue {}", sol.price, sol.revenue);
    Ok(())
}
