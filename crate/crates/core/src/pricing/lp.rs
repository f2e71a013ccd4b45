//! Exact rational linear programming: a dense two-phase primal simplex with
//! Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::model::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Free,
    NonNegative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        solution: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// `maximize ⟨objective, x⟩` subject to the constraints; variables are free
/// unless marked nonnegative or fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    kinds: Vec<VarKind>,
    fixed: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            kinds: vec![VarKind::Free; num_vars],
            fixed: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn maximize(&mut self, objective: Vec<Rational>) -> &mut Self {
        assert_eq!(objective.len(), self.num_vars());
        self.objective = objective;
        self
    }

    pub fn add_constraint(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars());
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn set_kind(&mut self, var: usize, kind: VarKind) -> &mut Self {
        self.kinds[var] = kind;
        self
    }

    pub fn fix(&mut self, var: usize, value: Rational) -> &mut Self {
        self.fixed[var] = Some(value);
        self
    }

    /// True if `x` satisfies every constraint, bound and fixing exactly.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = x.iter().enumerate().all(|(j, xj)| {
            let kind_ok = self.kinds[j] == VarKind::Free || !xj.is_negative();
            let fixed_ok = self.fixed[j].as_ref().is_none_or(|f| f == xj);
            kind_ok && fixed_ok
        });
        bounds_ok
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn solve(&self) -> LpOutcome {
        lp_solve(self)
    }
}

// Column `plus` (and `minus` for free variables) in the standard form.
#[derive(Clone, Copy)]
enum ColumnMap {
    Fixed,
    NonNeg(usize),
    Split(usize, usize),
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cost: Vec<Rational>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        if !inv.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let nz: Vec<usize> = (0..=self.width)
            .filter(|&k| !self.rows[r][k].is_zero())
            .collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &k in &nz {
                row[k] -= &f * &pivot_row[k];
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for &k in &nz {
                self.cost[k] -= &f * &pivot_row[k];
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    fn set_objective(&mut self, c: &[Rational]) {
        let mut cost: Vec<Rational> = c.to_vec();
        cost.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for k in 0..=self.width {
                if !self.rows[r][k].is_zero() {
                    cost[k] -= &c[b] * &self.rows[r][k];
                }
            }
        }
        self.cost = cost;
    }

    fn objective_value(&self) -> Rational {
        -self.cost[self.width].clone()
    }

    /// Runs Bland's rule over columns `< allowed`. Returns false when
    /// unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(col) = (0..allowed).find(|&j| self.cost[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

/// Solves `lp` exactly.
pub fn lp_solve(lp: &LinearProgram) -> LpOutcome {
    let nv = lp.num_vars();
    let mut maps = Vec::with_capacity(nv);
    let mut ncols = 0;
    for j in 0..nv {
        let map = if lp.fixed[j].is_some() {
            ColumnMap::Fixed
        } else if lp.kinds[j] == VarKind::NonNegative {
            ncols += 1;
            ColumnMap::NonNeg(ncols - 1)
        } else {
            ncols += 2;
            ColumnMap::Split(ncols - 2, ncols - 1)
        };
        maps.push(map);
    }
    let structural = ncols;

    // Normalized rows: structural coefficients, relation, rhs >= 0.
    let mut normalized = Vec::with_capacity(lp.constraints.len());
    for c in &lp.constraints {
        let mut row = vec![Rational::zero(); structural];
        let mut rhs = c.rhs.clone();
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match maps[j] {
                ColumnMap::Fixed => rhs -= a * lp.fixed[j].as_ref().unwrap(),
                ColumnMap::NonNeg(p) => row[p] = a.clone(),
                ColumnMap::Split(p, m) => {
                    row[p] = a.clone();
                    row[m] = -a.clone();
                }
            }
        }
        let mut rel = c.relation;
        if rhs.is_negative() {
            rhs = -rhs;
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        if row.iter().all(Zero::is_zero) {
            // 0 (rel) rhs with rhs >= 0
            let ok = match rel {
                Relation::Le => true,
                Relation::Ge | Relation::Eq => rhs.is_zero(),
            };
            if !ok {
                return LpOutcome::Infeasible;
            }
            continue;
        }
        normalized.push((row, rel, rhs));
    }

    let slack_count = normalized
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::Eq)
        .count();
    let art_count = normalized
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::Le)
        .count();
    let art_start = structural + slack_count;
    let width = art_start + art_count;

    let mut rows = Vec::with_capacity(normalized.len());
    let mut basis = Vec::with_capacity(normalized.len());
    let (mut s, mut a) = (structural, art_start);
    for (coeffs, rel, rhs) in normalized {
        let mut row = coeffs;
        row.resize(width + 1, Rational::zero());
        row[width] = rhs;
        match rel {
            Relation::Le => {
                row[s] = Rational::one();
                basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                row[s] = -Rational::one();
                s += 1;
                row[a] = Rational::one();
                basis.push(a);
                a += 1;
            }
            Relation::Eq => {
                row[a] = Rational::one();
                basis.push(a);
                a += 1;
            }
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        basis,
        cost: Vec::new(),
        width,
    };

    if art_count > 0 {
        let mut phase1 = vec![Rational::zero(); width];
        for c in phase1.iter_mut().skip(art_start) {
            *c = -Rational::one();
        }
        t.set_objective(&phase1);
        t.optimize(width);
        if t.objective_value().is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= art_start {
                match (0..art_start).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(col) => {
                        t.pivot(r, col);
                        r += 1;
                    }
                    None => {
                        t.rows.remove(r);
                        t.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }

    let mut c = vec![Rational::zero(); width];
    for (j, obj) in lp.objective.iter().enumerate() {
        match maps[j] {
            ColumnMap::Fixed => {}
            ColumnMap::NonNeg(p) => c[p] = obj.clone(),
            ColumnMap::Split(p, m) => {
                c[p] = obj.clone();
                c[m] = -obj.clone();
            }
        }
    }
    t.set_objective(&c);
    if !t.optimize(art_start) {
        return LpOutcome::Unbounded;
    }

    let mut col_values = vec![Rational::zero(); width];
    for (r, &b) in t.basis.iter().enumerate() {
        col_values[b] = t.rows[r][width].clone();
    }
    let solution: Vec<Rational> = (0..nv)
        .map(|j| match maps[j] {
            ColumnMap::Fixed => lp.fixed[j].clone().unwrap(),
            ColumnMap::NonNeg(p) => col_values[p].clone(),
            ColumnMap::Split(p, m) => &col_values[p] - &col_values[m],
        })
        .collect();
    let value = lp.objective_at(&solution);
    debug_assert!(lp.is_feasible_point(&solution));
    LpOutcome::Optimal { value, solution }
}
