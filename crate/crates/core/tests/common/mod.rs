//! Test oracles written independently of the library internals.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Coordinates of the bundle `mask` over K_n: vertices, then pairs `i<j`
/// in lexicographic order.
pub fn kn_char(n: usize, mask: u64) -> Vec<i64> {
    let bit = |i: usize| ((mask >> i) & 1) as i64;
    let mut out: Vec<i64> = (0..n).map(bit).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(bit(i) * bit(j));
        }
    }
    out
}

pub fn kn_dim(n: usize) -> usize {
    n + n * (n - 1) / 2
}

fn pivot(t: &mut [Vec<Q>], basis: &mut [usize], r: usize, c: usize) {
    let p = t[r][c].clone();
    for x in t[r].iter_mut() {
        *x /= &p;
    }
    let row = t[r].clone();
    for (i, ti) in t.iter_mut().enumerate() {
        if i == r || ti[c].is_zero() {
            continue;
        }
        let f = ti[c].clone();
        for (x, y) in ti.iter_mut().zip(&row) {
            *x -= &f * y;
        }
    }
    basis[r] = c;
}

/// Minimizes over the columns in `allowed`; `false` when unbounded.
fn run(t: &mut [Vec<Q>], basis: &mut [usize], cost: &[Q], allowed: usize) -> bool {
    let rhs = t.first().map_or(0, |r| r.len() - 1);
    loop {
        let entering = (0..allowed).find(|&j| {
            let mut rc = cost[j].clone();
            for (i, &b) in basis.iter().enumerate() {
                rc -= &cost[b] * &t[i][j];
            }
            rc.is_negative()
        });
        let Some(j) = entering else {
            return true;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][rhs] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((k, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        match leave {
            None => return false,
            Some((i, _)) => pivot(t, basis, i, j),
        }
    }
}

/// `min ⟨cost, y⟩` subject to `Σ_k y_k cols[k] = target`, `y ≥ 0`, by a
/// two-phase tableau simplex. `None` when infeasible or unbounded.
pub fn standard_form_min(cols: &[Vec<i64>], cost: &[Q], target: &[i64]) -> Option<Q> {
    let d = target.len();
    let r = cols.len();
    let width = r + d + 1;
    let mut t: Vec<Vec<Q>> = (0..d)
        .map(|i| {
            let sign = if target[i] < 0 { -1 } else { 1 };
            let mut row = vec![Q::zero(); width];
            for (k, col) in cols.iter().enumerate() {
                row[k] = q(sign * col[i]);
            }
            row[r + i] = Q::one();
            row[width - 1] = q(sign * target[i]);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (r..r + d).collect();
    let mut phase1 = vec![Q::zero(); r + d];
    for c in phase1.iter_mut().skip(r) {
        *c = Q::one();
    }
    run(&mut t, &mut basis, &phase1, r + d);
    let infeas: Q = basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= r)
        .map(|(i, _)| t[i][width - 1].clone())
        .sum();
    if infeas.is_positive() {
        return None;
    }
    // drive zero-level artificials out, dropping redundant rows
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= r {
            match (0..r).find(|&j| !t[i][j].is_zero()) {
                Some(j) => pivot(&mut t, &mut basis, i, j),
                None => {
                    t.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut phase2 = cost.to_vec();
    phase2.resize(r + d, Q::zero());
    if !run(&mut t, &mut basis, &phase2, r) {
        return None;
    }
    Some(
        basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &phase2[b] * &t[i][width - 1])
            .sum(),
    )
}

fn value(w: &[i64], chi: &[i64]) -> i64 {
    w.iter().zip(chi).map(|(a, b)| a * b).sum()
}

/// Best seller revenue over every allocation projecting to `supply` that
/// some price supports as a competitive equilibrium. Each allocation's
/// price program `max ⟨p,a⟩ s.t. ⟨p, χS−χT⟩ ≤ w(S)−w(T)` is solved through
/// its dual `min Σ y (w(S)−w(T))` with `Σ y (χS−χT) = a`, `y ≥ 0`; the primal
/// is bounded by welfare, so an infeasible or unbounded dual means no price.
pub fn brute_force_revenue(n: usize, weights: &[Vec<i64>], supply: &[i64]) -> Option<Q> {
    let m = weights.len();
    let chars: Vec<Vec<i64>> = (0..1u64 << n).map(|s| kn_char(n, s)).collect();
    let d = kn_dim(n);
    let mut best: Option<Q> = None;
    let total = (1usize << n).pow(m as u32);
    for code in 0..total {
        let mut rest = code;
        let alloc: Vec<usize> = (0..m)
            .map(|_| {
                let s = rest % (1 << n);
                rest >>= n;
                s
            })
            .collect();
        let mut a = vec![0i64; d];
        for &s in &alloc {
            for (x, y) in a.iter_mut().zip(&chars[s]) {
                *x += y;
            }
        }
        if a[..n] != *supply {
            continue;
        }
        let mut cols = Vec::new();
        let mut cost = Vec::new();
        for (b, &s) in alloc.iter().enumerate() {
            for t in 0..chars.len() {
                if t == s {
                    continue;
                }
                cols.push(chars[s].iter().zip(&chars[t]).map(|(x, y)| x - y).collect());
                cost.push(q(
                    value(&weights[b], &chars[s]) - value(&weights[b], &chars[t])
                ));
            }
        }
        if let Some(rev) = standard_form_min(&cols, &cost, &a) {
            if best.as_ref().is_none_or(|b| rev > *b) {
                best = Some(rev);
            }
        }
    }
    best
}
