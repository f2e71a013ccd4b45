//! Given faces with convex weights whose weighted vertices add up to a
//! multiset of vertices, an integral flow picks one vertex per face.

use quadprice::assignment::label_faces;
use quadprice::model::{char_vector, ratio, Bundle, ValueGraph};
use quadprice::polytope::Face;

fn main() -> quadprice::Result<()> {
    let g = ValueGraph::complete(3)?;
    let chain = [
        Bundle::from_items([0, 1]),
        Bundle::from_items([0]),
        Bundle::EMPTY,
    ];
    let face = Face::from_bundles(&g, &chain)?;
    let third = ratio(1, 3);
    let faces: Vec<_> = (0..3)
        .map(|_| (face.clone(), vec![third.clone(); 3]))
        .collect();
    let targets = chain
        .iter()
        .map(|&s| Ok((char_vector(s, &g)?, 1)))
        .collect::<quadprice::Result<Vec<_>>>()?;
    for (b, t) in label_faces(&g, &faces, &targets)?.into_iter().enumerate() {
        println!("face {} -> {}", b + 1, chain[t]);
    }
    Ok(())
}
