use num_traits::{One, Zero};

use super::{bundle_of, vertices};
use crate::error::{Error, Result};
use crate::model::{rat, Bundle, ExtRational, GPoint, Rational, Valuation, ValueGraph};
use crate::pricing::lp::{LinearProgram, LpOutcome, Relation, VarKind};

/// Upper bound on the number of vertex choices `vertex_sum_contains`
/// will consider before pruning.
const VERTEX_CHOICE_CAP: u128 = 1 << 32;

/// A face of P(G), given by its vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    vertices: Vec<GPoint>,
}

impl Face {
    /// Every member must be a characteristic vector over `graph`.
    pub fn new(graph: &ValueGraph, vertices: Vec<GPoint>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidFace {
                face: 0,
                reason: "empty vertex list",
            });
        }
        for v in &vertices {
            graph.check_len("face vertex", v.len())?;
            if bundle_of(graph, v).is_none() {
                return Err(Error::InvalidFace {
                    face: 0,
                    reason: "vertex is not a characteristic vector",
                });
            }
        }
        Ok(Face { vertices })
    }

    pub fn from_bundles(graph: &ValueGraph, bundles: &[Bundle]) -> Result<Self> {
        let vertices = bundles
            .iter()
            .map(|&s| crate::model::char_vector(s, graph))
            .collect::<Result<Vec<_>>>()?;
        Face::new(graph, vertices)
    }

    pub fn vertices(&self) -> &[GPoint] {
        &self.vertices
    }

    pub fn contains(&self, q: &GPoint) -> bool {
        self.vertices.contains(q)
    }

    pub fn bundles(&self, graph: &ValueGraph) -> Vec<Bundle> {
        self.vertices
            .iter()
            .map(|v| bundle_of(graph, v).expect("validated at construction"))
            .collect()
    }
}

/// Convex weights `λ` (one list per face, aligned with its vertex list) with
/// `Σ_b Σ_q λ_q q = a`, if any exist.
pub fn minkowski_weights(
    graph: &ValueGraph,
    faces: &[Face],
    a: &GPoint,
) -> Result<Option<Vec<Vec<Rational>>>> {
    graph.check_len("point", a.len())?;
    let offsets: Vec<usize> = faces
        .iter()
        .scan(0, |acc, f| {
            let start = *acc;
            *acc += f.vertices.len();
            Some(start)
        })
        .collect();
    let nv: usize = faces.iter().map(|f| f.vertices.len()).sum();
    let mut lp = LinearProgram::new(nv);
    for j in 0..nv {
        lp.set_kind(j, VarKind::NonNegative);
    }
    for (f, face) in faces.iter().enumerate() {
        let mut row = vec![Rational::zero(); nv];
        for k in 0..face.vertices.len() {
            row[offsets[f] + k] = Rational::one();
        }
        lp.add_constraint(row, Relation::Eq, Rational::one());
    }
    for c in 0..graph.d() {
        let mut row = vec![Rational::zero(); nv];
        for (f, face) in faces.iter().enumerate() {
            for (k, q) in face.vertices.iter().enumerate() {
                row[offsets[f] + k] = rat(q.coords()[c]);
            }
        }
        lp.add_constraint(row, Relation::Eq, rat(a.coords()[c]));
    }
    Ok(match lp.solve() {
        LpOutcome::Optimal { solution, .. } => Some(
            faces
                .iter()
                .enumerate()
                .map(|(f, face)| solution[offsets[f]..offsets[f] + face.vertices.len()].to_vec())
                .collect(),
        ),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("zero objective"),
    })
}

/// Whether `a` lies in the Minkowski sum `F^1 + … + F^m`.
pub fn minkowski_contains(graph: &ValueGraph, faces: &[Face], a: &GPoint) -> Result<bool> {
    Ok(minkowski_weights(graph, faces, a)?.is_some())
}

/// One vertex per face summing to `a`, as indices into each face's vertex
/// list; `None` if `a` is not in `vert(F^1) + … + vert(F^m)`.
pub fn vertex_sum_contains(
    graph: &ValueGraph,
    faces: &[Face],
    a: &GPoint,
) -> Result<Option<Vec<usize>>> {
    graph.check_len("point", a.len())?;
    let choices: u128 = faces
        .iter()
        .map(|f| f.vertices.len() as u128)
        .try_fold(1u128, |acc, k| acc.checked_mul(k))
        .unwrap_or(u128::MAX);
    if choices > VERTEX_CHOICE_CAP {
        return Err(Error::CapExceeded {
            what: "vertex choices",
            value: usize::try_from(choices).unwrap_or(usize::MAX),
            cap: VERTEX_CHOICE_CAP as usize,
        });
    }
    let d = graph.d();
    // suffix_max[b][c]: the most faces b.. can still contribute to coordinate c
    let mut suffix_max = vec![vec![0i64; d]; faces.len() + 1];
    for b in (0..faces.len()).rev() {
        for c in 0..d {
            let best = faces[b]
                .vertices
                .iter()
                .map(|q| q.coords()[c])
                .max()
                .unwrap();
            suffix_max[b][c] = suffix_max[b + 1][c] + best;
        }
    }
    let mut residual = a.0.clone();
    let mut picks = Vec::with_capacity(faces.len());
    let found = search(faces, 0, &mut residual, &suffix_max, &mut picks);
    Ok(found.then_some(picks))
}

fn search(
    faces: &[Face],
    b: usize,
    residual: &mut [i64],
    suffix_max: &[Vec<i64>],
    picks: &mut Vec<usize>,
) -> bool {
    if b == faces.len() {
        return residual.iter().all(|&x| x == 0);
    }
    for (k, q) in faces[b].vertices.iter().enumerate() {
        let ok = residual
            .iter()
            .zip(q.coords())
            .enumerate()
            .all(|(c, (&r, &x))| r - x >= 0 && r - x <= suffix_max[b + 1][c]);
        if !ok {
            continue;
        }
        for (r, x) in residual.iter_mut().zip(q.coords()) {
            *r -= x;
        }
        picks.push(k);
        if search(faces, b + 1, residual, suffix_max, picks) {
            return true;
        }
        picks.pop();
        for (r, x) in residual.iter_mut().zip(q.coords()) {
            *r += x;
        }
    }
    false
}

/// A valuation whose demand set at price zero is exactly the face, found by
/// linear programming over the vertices of P(G); `None` if the given vertex
/// set is not a face.
pub fn supporting_valuation(graph: &ValueGraph, face: &Face) -> Result<Option<Valuation>> {
    let d = graph.d();
    let all = vertices(graph)?;
    // variables: w_0..w_{d-1}, t
    let mut lp = LinearProgram::new(d + 1);
    let mut objective = vec![Rational::zero(); d + 1];
    objective[d] = -Rational::one();
    lp.maximize(objective);
    for q in &all {
        let mut row: Vec<Rational> = q.coords().iter().map(|&x| rat(x)).collect();
        row.push(-Rational::one());
        if face.contains(q) {
            lp.add_constraint(row, Relation::Eq, Rational::zero());
        } else {
            lp.add_constraint(row, Relation::Le, -Rational::one());
        }
    }
    Ok(match lp.solve() {
        LpOutcome::Optimal { mut solution, .. } => {
            solution.truncate(d);
            Some(Valuation::new(
                solution.into_iter().map(ExtRational::Finite).collect(),
            ))
        }
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("t is bounded below by the empty bundle"),
    })
}
