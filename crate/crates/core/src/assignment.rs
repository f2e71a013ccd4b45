//! Integral max-flow and the face labeling built on it.

use std::collections::VecDeque;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{rat, GPoint, Rational, ValueGraph};
use crate::polytope::Face;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: i64,
    pub flow: i64,
}

/// A directed network with integer capacities. Arcs are scanned in
/// insertion order, so the flow found is deterministic.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
    // residual adjacency: (arc index, forward?)
    adj: Vec<Vec<(usize, bool)>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        assert!(source < nodes && sink < nodes && source != sink);
        FlowNetwork {
            nodes,
            source,
            sink,
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: i64) -> usize {
        assert!(from < self.nodes && to < self.nodes && capacity >= 0);
        let id = self.arcs.len();
        self.arcs.push(Arc {
            from,
            to,
            capacity,
            flow: 0,
        });
        self.adj[from].push((id, true));
        self.adj[to].push((id, false));
        id
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn value(&self) -> i64 {
        self.arcs
            .iter()
            .map(|a| {
                if a.from == self.source {
                    a.flow
                } else if a.to == self.source {
                    -a.flow
                } else {
                    0
                }
            })
            .sum()
    }

    fn residual(&self, arc: usize, forward: bool) -> i64 {
        let a = &self.arcs[arc];
        if forward {
            a.capacity - a.flow
        } else {
            a.flow
        }
    }

    /// Shortest augmenting paths from the current flow; returns the total
    /// flow value.
    pub fn max_flow(&mut self) -> i64 {
        loop {
            let mut prev: Vec<Option<(usize, bool)>> = vec![None; self.nodes];
            let mut seen = vec![false; self.nodes];
            seen[self.source] = true;
            let mut queue = VecDeque::from([self.source]);
            while let Some(u) = queue.pop_front() {
                if u == self.sink {
                    break;
                }
                for &(arc, fwd) in &self.adj[u] {
                    let v = if fwd {
                        self.arcs[arc].to
                    } else {
                        self.arcs[arc].from
                    };
                    if !seen[v] && self.residual(arc, fwd) > 0 {
                        seen[v] = true;
                        prev[v] = Some((arc, fwd));
                        queue.push_back(v);
                    }
                }
            }
            if !seen[self.sink] {
                return self.value();
            }
            let mut path = Vec::new();
            let mut v = self.sink;
            while let Some((arc, fwd)) = prev[v] {
                path.push((arc, fwd));
                v = if fwd {
                    self.arcs[arc].from
                } else {
                    self.arcs[arc].to
                };
            }
            let delta = path
                .iter()
                .map(|&(arc, fwd)| self.residual(arc, fwd))
                .min()
                .unwrap();
            for (arc, fwd) in path {
                if fwd {
                    self.arcs[arc].flow += delta;
                } else {
                    self.arcs[arc].flow -= delta;
                }
            }
        }
    }

    /// Whether `flow` (one rational per arc) respects capacities and
    /// conserves flow at every node other than source and sink.
    pub fn is_feasible_flow(&self, flow: &[Rational]) -> bool {
        if flow.len() != self.arcs.len() {
            return false;
        }
        let mut excess = vec![Rational::zero(); self.nodes];
        for (a, f) in self.arcs.iter().zip(flow) {
            if *f < Rational::zero() || *f > rat(a.capacity) {
                return false;
            }
            excess[a.from] -= f;
            excess[a.to] += f;
        }
        excess
            .iter()
            .enumerate()
            .all(|(v, e)| v == self.source || v == self.sink || e.is_zero())
    }
}

/// The labeling network: source, one node per face, one node per target,
/// sink. Node indices are `0`, `1..=m`, `m+1..=m+T`, `m+T+1`.
fn labeling_network(faces: &[(Face, Vec<Rational>)], targets: &[(GPoint, usize)]) -> FlowNetwork {
    let m = faces.len();
    let t = targets.len();
    let sink = m + t + 1;
    let mut net = FlowNetwork::new(m + t + 2, 0, sink);
    for b in 0..m {
        net.add_arc(0, 1 + b, 1);
    }
    for (b, (face, _)) in faces.iter().enumerate() {
        for (k, (chi, _)) in targets.iter().enumerate() {
            if face.contains(chi) {
                net.add_arc(1 + b, m + 1 + k, 1);
            }
        }
    }
    for (k, &(_, mu)) in targets.iter().enumerate() {
        net.add_arc(m + 1 + k, sink, mu as i64);
    }
    net
}

/// Assigns to each face the index of a target vector in its vertex list,
/// using target `t` exactly `μ_t` times.
pub fn label_faces(
    graph: &ValueGraph,
    faces: &[(Face, Vec<Rational>)],
    targets: &[(GPoint, usize)],
) -> Result<Vec<usize>> {
    let m = faces.len();
    let total: usize = targets.iter().map(|t| t.1).sum();
    if total != m {
        return Err(Error::MultiplicitySum {
            expected: m,
            got: total,
        });
    }
    for (b, (face, lambda)) in faces.iter().enumerate() {
        if lambda.len() != face.vertices().len() {
            return Err(Error::InvalidFace {
                face: b,
                reason: "weight count differs from vertex count",
            });
        }
        if lambda.iter().any(|l| *l < Rational::zero())
            || lambda.iter().sum::<Rational>() != Rational::one()
        {
            return Err(Error::InvalidFace {
                face: b,
                reason: "weights are not convex",
            });
        }
    }
    for (k, (chi, mu)) in targets.iter().enumerate() {
        graph.check_len("target", chi.len())?;
        let mass: Rational = faces
            .iter()
            .flat_map(|(f, l)| f.vertices().iter().zip(l))
            .filter(|(q, _)| *q == chi)
            .map(|(_, l)| l.clone())
            .sum();
        if mass != rat(*mu as i64) {
            return Err(Error::Balance { target: k });
        }
    }
    let mut net = labeling_network(faces, targets);
    if net.max_flow() != m as i64 {
        return Err(Error::Internal("labeling flow is not perfect".into()));
    }
    let mut labels = vec![usize::MAX; m];
    for arc in net.arcs() {
        if arc.flow == 1 && (1..=m).contains(&arc.from) && arc.to > m && arc.to <= m + targets.len()
        {
            labels[arc.from - 1] = arc.to - m - 1;
        }
    }
    Ok(labels)
}
