//! Points made of r copies of disjoint cliques: split into cliques, then
//! price them.

use quadprice::model::{char_vector, Bundle, GPoint, Valuation, ValueGraph};
use quadprice::polytope::{clique_decompose, decompose_scaled_binary};
use quadprice::pricing::{ce_price_at_point, SolveOptions};

fn main() -> quadprice::Result<()> {
    let g = ValueGraph::complete(5)?;
    let r = 2;
    let mut a = GPoint::zero(g.d());
    for c in [Bundle::from_items([0, 2]), Bundle::from_items([1, 3, 4])] {
        a += &char_vector(c, &g)?.scaled(r);
    }
    let dec = clique_decompose(&g, &a, r)?;
    for part in &dec.parts {
        println!("{} x {}", part.multiplicity, part.clique);
    }
    let m = 5;
    println!(
        "as {m} bundles: {:?}",
        decompose_scaled_binary(&g, &a, r, m)?
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );

    let vs: Vec<_> = (0..m as i64)
        .map(|b| {
            let w: Vec<i64> = (0..g.d() as i64).map(|c| (b * 7 + c * 3) % 5 - 2).collect();
            Valuation::from_ints(&w)
        })
        .collect();
    let res = ce_price_at_point(&g, &vs, &a, &SolveOptions::default())?;
    let sol = res.solution.expect("disjoint-clique points always clear");
    println!("revenue {} with {}", sol.revenue, sol.allocation);
    Ok(())
}
