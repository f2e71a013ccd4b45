use std::fmt;

use crate::error::{Error, Result};
use crate::model::{GPoint, ValueGraph};

/// The five inequality families of the linear relaxation of `m·P(K_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PadbergInequality {
    /// `x_ij >= 0`
    I,
    /// `x_i - x_ij >= 0`
    II,
    /// `x_i + x_j - x_ij <= m`
    III,
    /// `x_i + x_jk - x_ij - x_ik >= 0`
    IV,
    /// `x_i + x_j + x_k - x_ij - x_ik - x_jk <= m`
    V,
}

impl fmt::Display for PadbergInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PadbergInequality::I => "i",
            PadbergInequality::II => "ii",
            PadbergInequality::III => "iii",
            PadbergInequality::IV => "iv",
            PadbergInequality::V => "v",
        };
        f.write_str(s)
    }
}

/// A violated instance. `indices` are 0-based items: `[i, j]` for (i) to (iii)
/// (for (ii), `i` is the vertex), `[i, j, k]` for (iv) with `i` the apex, and
/// the sorted triple for (v). `lhs` is the evaluated left-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub inequality: PadbergInequality,
    pub indices: Vec<usize>,
    pub lhs: i64,
}

/// Every violated instance of (i) to (v) at `a` with dilation `m`.
pub fn padberg_check(graph: &ValueGraph, a: &GPoint, m: i64) -> Result<Vec<Violation>> {
    if !graph.is_complete() {
        return Err(Error::NotComplete);
    }
    graph.check_len("point", a.len())?;
    let n = graph.n();
    let x = a.coords();
    let e = |i: usize, j: usize| x[graph.edge_coord(i, j).unwrap()];
    let mut out = Vec::new();
    let mut push = |inequality, indices: Vec<usize>, lhs| {
        out.push(Violation {
            inequality,
            indices,
            lhs,
        })
    };

    for i in 0..n {
        for j in i + 1..n {
            if e(i, j) < 0 {
                push(PadbergInequality::I, vec![i, j], e(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && x[i] - e(i, j) < 0 {
                push(PadbergInequality::II, vec![i, j], x[i] - e(i, j));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let lhs = x[i] + x[j] - e(i, j);
            if lhs > m {
                push(PadbergInequality::III, vec![i, j], lhs);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                if i == j || i == k {
                    continue;
                }
                let lhs = x[i] + e(j, k) - e(i, j) - e(i, k);
                if lhs < 0 {
                    push(PadbergInequality::IV, vec![i, j, k], lhs);
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let lhs = x[i] + x[j] + x[k] - e(i, j) - e(i, k) - e(j, k);
                if lhs > m {
                    push(PadbergInequality::V, vec![i, j, k], lhs);
                }
            }
        }
    }
    Ok(out)
}

/// The representative-vertex inequality
/// `Σ_i x_{k_i} − Σ_{i<j} x_{k_i k_j} <= m` for distinct items `reps`.
/// Every vertex of P(K_n) satisfies it with `m = 1`.
pub fn representative_inequality_holds(
    graph: &ValueGraph,
    a: &GPoint,
    reps: &[usize],
    m: i64,
) -> Result<bool> {
    if !graph.is_complete() {
        return Err(Error::NotComplete);
    }
    graph.check_len("point", a.len())?;
    let x = a.coords();
    let mut lhs: i64 = reps.iter().map(|&k| x[k]).sum();
    for (p, &ki) in reps.iter().enumerate() {
        for &kj in &reps[p + 1..] {
            lhs -= x[graph.edge_coord(ki, kj).unwrap()];
        }
    }
    Ok(lhs <= m)
}
