//! Adding one to every weight leaves demand sets unchanged up to the same
//! shift in prices, yet it turns Cutlery into a market with a pricing
//! equilibrium and even a linear one.

use quadprice::cli::corpus;
use quadprice::demand::{verify_pe, walrasian_exists};
use quadprice::model::{Allocation, Bundle, PriceVector};
use quadprice::pricing::SolveOptions;

fn main() -> quadprice::Result<()> {
    let inst = corpus("cutlery-shifted")?;
    let (g, vs, supply) = (&inst.graph, &inst.valuations, &inst.supply);

    let p = PriceVector::from_ints(&[3, 3, 1, 0, 0, 0]);
    let all_to_first = Allocation::new(vec![Bundle::full(3), Bundle::EMPTY, Bundle::EMPTY]);
    let v = verify_pe(g, vs, &all_to_first, &p, supply, &Default::default())?;
    println!(
        "price {p}: revenue {}, pricing equilibrium {}",
        v.revenue,
        v.holds()
    );

    match walrasian_exists(g, vs, supply, &SolveOptions::default())? {
        Some((price, alloc)) => println!("linear price {price} clears with {alloc}"),
        None => println!("no linear price"),
    }
    Ok(())
}
