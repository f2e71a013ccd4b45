//! For any supply over a complete graph the nested-chain point, with edge
//! counts min(a_i, a_j), is always supported by some quadratic price.

use quadprice::model::{Valuation, ValueGraph};
use quadprice::polytope::nested_chain_point;
use quadprice::pricing::{ce_price_at_point, SolveOptions};

fn main() -> quadprice::Result<()> {
    let g = ValueGraph::complete(4)?;
    let vs = vec![
        Valuation::from_ints(&[2, -1, 0, 3, 1, -2, 0, 0, 1, 2]),
        Valuation::from_ints(&[0, 1, 1, -1, 0, 2, 1, -3, 0, 0]),
        Valuation::from_ints(&[1, 1, -2, 0, 0, 0, 2, 1, -1, 1]),
    ];
    let supply = [3, 1, 2, 0];
    let (a, chain) = nested_chain_point(&g, &supply, vs.len())?;
    println!("supply {supply:?} -> point {a}");
    for part in &chain.parts {
        println!("  {} x {}", part.multiplicity, part.clique);
    }
    let r = ce_price_at_point(&g, &vs, &a, &SolveOptions::default())?;
    let sol = r.solution.expect("nested-chain points always clear");
    println!("revenue {} at price {}", sol.revenue, sol.price);
    println!("allocation {}", sol.allocation);
    Ok(())
}
