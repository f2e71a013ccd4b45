//! Built-in instances.

use crate::error::{Error, Result};
use crate::model::{rat, Bundle, GPoint, Valuation, ValueGraph};
use crate::polytope::{supporting_valuation, Face};

use super::format::{Instance, Mode};

pub const CORPUS_NAMES: [&str; 4] = ["cutlery", "cutlery-shifted", "house", "idp-k4"];

pub fn corpus(name: &str) -> Result<Instance> {
    match name {
        "cutlery" => Ok(cutlery(false)),
        "cutlery-shifted" => Ok(cutlery(true)),
        "house" => house(),
        "idp-k4" => idp_k4(),
        _ => Err(Error::UnknownCorpus(name.to_string())),
    }
}

/// Three agents over knife, fork and spoon, each wanting one pair.
fn cutlery(shifted: bool) -> Instance {
    let graph = ValueGraph::complete(3).expect("K3");
    let mut valuations = vec![
        Valuation::from_ints(&[0, 0, 0, 1, 0, 0]),
        Valuation::from_ints(&[0, 0, 0, 0, 1, 0]),
        Valuation::from_ints(&[0, 0, 0, 0, 0, 1]),
    ];
    if shifted {
        valuations = valuations
            .iter()
            .map(|v| v.shift(&vec![rat(1); 6]))
            .collect();
    }
    Instance {
        graph,
        labels: Some(vec!["A".into(), "B".into(), "C".into()]),
        valuations,
        supply: vec![1, 1, 1],
        mode: Mode::default(),
        faces: None,
        point: None,
    }
}

fn bundles(lists: &[&[&[usize]]]) -> Vec<Vec<Bundle>> {
    lists
        .iter()
        .map(|face| {
            face.iter()
                .map(|items| Bundle::from_items(items.iter().map(|&i| i - 1)))
                .collect()
        })
        .collect()
}

/// One agent per face, each with a valuation whose zero-price demand set
/// is that face.
fn with_faces(
    graph: ValueGraph,
    faces: Vec<Vec<Bundle>>,
    point: GPoint,
    supply: Vec<i64>,
) -> Result<Instance> {
    let mut valuations = Vec::with_capacity(faces.len());
    for (f, list) in faces.iter().enumerate() {
        let face = Face::from_bundles(&graph, list)?;
        valuations.push(
            supporting_valuation(&graph, &face)?.ok_or(Error::InvalidFace {
                face: f,
                reason: "vertex set is not a face",
            })?,
        );
    }
    Ok(Instance {
        graph,
        labels: None,
        valuations,
        supply,
        mode: Mode::default(),
        faces: Some(faces),
        point: Some(point),
    })
}

/// A five-item graph (a square with a roof) whose four faces have the point
/// in their Minkowski sum but not in the sum of their vertex sets.
fn house() -> Result<Instance> {
    let graph = ValueGraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (3, 4)])?;
    let faces = bundles(&[
        &[&[2], &[1, 3]],
        &[&[3], &[2, 4]],
        &[&[5], &[1]],
        &[&[5], &[4]],
    ]);
    let mut point = vec![1; 5];
    point.resize(graph.d(), 0);
    with_faces(graph, faces, GPoint(point), vec![1; 5])
}

/// Four items, four agents, and a lattice point of `4·P(K_4)` that is not a
/// sum of four vertices.
fn idp_k4() -> Result<Instance> {
    let graph = ValueGraph::complete(4)?;
    let faces = bundles(&[
        &[&[], &[4]],
        &[&[2, 3], &[1, 3]],
        &[&[2, 3, 4], &[1, 3, 4]],
        &[&[1, 2], &[1, 2, 4]],
    ]);
    let point = GPoint(vec![2, 2, 2, 2, 1, 1, 1, 1, 1, 1]);
    with_faces(graph, faces, point, vec![2; 4])
}
