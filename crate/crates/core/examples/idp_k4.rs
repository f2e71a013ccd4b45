//! A lattice point of 4·P(K4) that passes every inequality of the
//! relaxation but is not a sum of four vertices, so no allocation and
//! hence no competitive equilibrium can produce it.

use quadprice::cli::corpus;
use quadprice::polytope::{
    enumerate_decompositions, minkowski_contains, padberg_check, Caps, Face,
};
use quadprice::pricing::{ce_price_at_point, SolveOptions};

fn main() -> quadprice::Result<()> {
    let inst = corpus("idp-k4")?;
    let g = &inst.graph;
    let a = inst.point.clone().unwrap();

    println!("point {a}");
    println!("relaxation violations: {}", padberg_check(g, &a, 4)?.len());
    let faces = inst
        .faces
        .as_ref()
        .unwrap()
        .iter()
        .map(|f| Face::from_bundles(g, f))
        .collect::<quadprice::Result<Vec<_>>>()?;
    println!(
        "in the sum of the four edges: {}",
        minkowski_contains(g, &faces, &a)?
    );
    let n = enumerate_decompositions(g, &a, 4, &Caps::default())?.count();
    println!("decompositions into 4 vertices: {n}");
    let r = ce_price_at_point(g, &inst.valuations, &a, &SolveOptions::default())?;
    println!("equilibrium at this point: {:?}", r.status);
    Ok(())
}
