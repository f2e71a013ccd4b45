//! On the five-item house graph the point (1,1,1,1,1,0,..,0) lies in the
//! Minkowski sum of four faces of P(G) but is not a sum of one vertex from
//! each face.

use quadprice::cli::corpus;
use quadprice::polytope::{minkowski_weights, vertex_sum_contains, Face};

fn main() -> quadprice::Result<()> {
    let inst = corpus("house")?;
    let g = &inst.graph;
    let faces = inst
        .faces
        .as_ref()
        .unwrap()
        .iter()
        .map(|f| Face::from_bundles(g, f))
        .collect::<quadprice::Result<Vec<_>>>()?;
    let a = inst.point.clone().unwrap();

    for (k, f) in faces.iter().enumerate() {
        let names: Vec<_> = f.bundles(g).iter().map(|&s| inst.bundle_name(s)).collect();
        println!("F{} = conv {}", k + 1, names.join(" "));
    }
    match minkowski_weights(g, &faces, &a)? {
        Some(weights) => {
            println!("{a} is in F1 + F2 + F3 + F4 with weights:");
            for (k, w) in weights.iter().enumerate() {
                let w: Vec<_> = w.iter().map(ToString::to_string).collect();
                println!("  F{}: {}", k + 1, w.join(", "));
            }
        }
        None => println!("{a} is outside the Minkowski sum"),
    }
    println!("vertex choice: {:?}", vertex_sum_contains(g, &faces, &a)?);
    Ok(())
}
