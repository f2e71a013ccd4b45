//! Three diners, three pieces of cutlery, each diner wanting one pair.
//! Quadratic prices clear the market; no price makes the seller's revenue
//! choice agree with the buyers, and no linear price clears it at all.

use quadprice::cli::corpus;
use quadprice::demand::{seller_demand, verify_pe};
use quadprice::pricing::{optimal_ce, SolveOptions};

fn main() -> quadprice::Result<()> {
    let inst = corpus("cutlery")?;
    let (g, vs, supply) = (&inst.graph, &inst.valuations, &inst.supply);

    let best = optimal_ce(g, vs, supply, &SolveOptions::default())?;
    let sol = best.solution.expect("a competitive equilibrium exists");
    println!("optimal revenue {}", sol.revenue);
    println!("price {}", sol.price);
    for (b, &s) in sol.allocation.bundles.iter().enumerate() {
        println!("  agent {} gets {}", b + 1, inst.bundle_name(s));
    }

    let pe = verify_pe(
        g,
        vs,
        &sol.allocation,
        &sol.price,
        supply,
        &Default::default(),
    )?;
    let seller = seller_demand(g, &sol.price, supply, vs.len(), &Default::default())?;
    println!(
        "seller would rather sell {} for {} -> pricing equilibrium: {}",
        seller.points[0],
        seller.revenue,
        pe.holds()
    );

    let linear = SolveOptions {
        walrasian: true,
        ..SolveOptions::default()
    };
    let w = optimal_ce(g, vs, supply, &linear)?;
    println!("linear prices: {:?}", w.status);
    Ok(())
}
