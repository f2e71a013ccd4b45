//! Demand sets of a single agent at a few prices.

use quadprice::demand::demand_set;
use quadprice::model::{PriceVector, Valuation, ValueGraph};
use quadprice::Caps;

fn main() -> quadprice::Result<()> {
    let g = ValueGraph::new(3, [(0, 1), (1, 2)])?;
    // vertices 1..3, then edges 1-2 and 2-3
    let v = Valuation::from_ints(&[1, 0, 1, 2, -1]);
    for p in [
        [0, 0, 0, 0, 0],
        [1, 1, 1, 0, 0],
        [0, 0, 0, 3, 0],
        [2, 2, 2, 0, 0],
    ] {
        let price = PriceVector::from_ints(&p);
        let ds = demand_set(&g, 0, &v, &price, &Caps::default())?;
        let bundles: Vec<_> = ds.bundles.iter().map(ToString::to_string).collect();
        println!(
            "price {price}: utility {} from {}",
            ds.utility,
            bundles.join(" ")
        );
    }
    Ok(())
}
