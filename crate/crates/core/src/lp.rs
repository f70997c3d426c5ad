//! Exact linear programming: dense two-phase simplex with Bland's rule.
//!
//! Sized for small problems (tens of variables). Bland's rule keeps the
//! method finite on degenerate problems, which are the norm for games with
//! large equilibrium sets.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug)]
struct Constraint {
    coeffs: Vec<Rational>,
    rel: Relation,
    rhs: Rational,
}

/// Variables are nonnegative unless marked free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    sense: Sense,
    objective: Vec<Rational>,
    free: Vec<bool>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    pub point: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            free: vec![false; n],
            constraints: Vec::new(),
        }
    }

    pub fn maximize(objective: Vec<Rational>) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    pub fn minimize(objective: Vec<Rational>) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    /// Pure feasibility problem over `num_vars` variables.
    pub fn feasibility(num_vars: usize) -> Self {
        Self::new(Sense::Maximize, vec![Rational::zero(); num_vars])
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn free_variable(mut self, j: usize) -> Self {
        self.free[j] = true;
        self
    }

    pub fn constraint(mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> Self {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint width");
        self.constraints.push(Constraint { coeffs, rel, rhs });
        self
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint width");
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve(self)
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self.solve(), LpOutcome::Infeasible)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    kinds: Vec<ColKind>,
    /// (positive part, negative part) column for each original variable.
    var_cols: Vec<(usize, Option<usize>)>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let mut var_cols = Vec::with_capacity(lp.num_vars());
        let mut kinds = Vec::new();
        for &free in &lp.free {
            let pos = kinds.len();
            kinds.push(ColKind::Structural);
            let neg = free.then(|| {
                kinds.push(ColKind::Structural);
                pos + 1
            });
            var_cols.push((pos, neg));
        }
        let n_struct = kinds.len();

        // Normalize to nonnegative right-hand sides.
        let normalized: Vec<(Vec<Rational>, Relation, Rational)> = lp
            .constraints
            .iter()
            .map(|c| {
                let mut row = vec![Rational::zero(); n_struct];
                for (j, coef) in c.coeffs.iter().enumerate() {
                    let (pos, neg) = var_cols[j];
                    row[pos] = coef.clone();
                    if let Some(neg) = neg {
                        row[neg] = -coef;
                    }
                }
                if c.rhs.is_negative() {
                    let rel = match c.rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (row.into_iter().map(|v| -v).collect(), rel, -&c.rhs)
                } else {
                    (row, c.rel, c.rhs.clone())
                }
            })
            .collect();

        let mut extra: Vec<(usize, Rational, ColKind)> = Vec::new(); // (row, coef, kind)
        let mut basis_of_row = vec![usize::MAX; normalized.len()];
        let mut next = n_struct;
        for (i, (_, rel, _)) in normalized.iter().enumerate() {
            match rel {
                Relation::Le => {
                    extra.push((i, Rational::from_integer(1.into()), ColKind::Slack));
                    basis_of_row[i] = next;
                    next += 1;
                }
                Relation::Ge => {
                    extra.push((i, Rational::from_integer((-1).into()), ColKind::Slack));
                    next += 1;
                    extra.push((i, Rational::from_integer(1.into()), ColKind::Artificial));
                    basis_of_row[i] = next;
                    next += 1;
                }
                Relation::Eq => {
                    extra.push((i, Rational::from_integer(1.into()), ColKind::Artificial));
                    basis_of_row[i] = next;
                    next += 1;
                }
            }
        }
        let total = next;
        kinds.extend(extra.iter().map(|e| e.2));

        let rows = normalized
            .into_iter()
            .enumerate()
            .map(|(i, (mut row, _, rhs))| {
                row.resize(total, Rational::zero());
                for (k, (r, coef, _)) in extra.iter().enumerate() {
                    if *r == i {
                        row[n_struct + k] = coef.clone();
                    }
                }
                row.push(rhs);
                row
            })
            .collect();

        Self {
            rows,
            basis: basis_of_row,
            kinds,
            var_cols,
        }
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn solve(mut self, lp: &LinearProgram) -> LpOutcome {
        let n = self.width();
        if self.kinds.contains(&ColKind::Artificial) {
            let cost: Vec<Rational> = self
                .kinds
                .iter()
                .map(|k| match k {
                    ColKind::Artificial => Rational::from_integer((-1).into()),
                    _ => Rational::zero(),
                })
                .collect();
            let allowed = vec![true; n];
            let phase1 = self.optimize(&cost, &allowed);
            debug_assert!(phase1.is_some(), "phase one is bounded");
            if phase1.is_some_and(|v| v.is_negative()) {
                return LpOutcome::Infeasible;
            }
            self.drive_out_artificials();
        }

        let mut cost = vec![Rational::zero(); n];
        for (j, coef) in lp.objective.iter().enumerate() {
            let c = match lp.sense {
                Sense::Maximize => coef.clone(),
                Sense::Minimize => -coef,
            };
            let (pos, neg) = self.var_cols[j];
            if let Some(neg) = neg {
                cost[neg] = -&c;
            }
            cost[pos] = c;
        }
        let allowed: Vec<bool> = self.kinds.iter().map(|k| *k != ColKind::Artificial).collect();
        match self.optimize(&cost, &allowed) {
            None => LpOutcome::Unbounded,
            Some(value) => {
                let mut col_value = vec![Rational::zero(); n];
                for (i, &b) in self.basis.iter().enumerate() {
                    col_value[b] = self.rows[i][n].clone();
                }
                let point = self
                    .var_cols
                    .iter()
                    .map(|&(pos, neg)| match neg {
                        Some(neg) => &col_value[pos] - &col_value[neg],
                        None => col_value[pos].clone(),
                    })
                    .collect();
                let value = match lp.sense {
                    Sense::Maximize => value,
                    Sense::Minimize => -value,
                };
                LpOutcome::Optimal(LpSolution { value, point })
            }
        }
    }

    /// Maximizes `cost · x` from the current basic feasible solution.
    /// Returns the optimum, or `None` when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> Option<Rational> {
        let n = self.width();
        // reduced-cost row: z_j - c_j, followed by the objective value
        let mut obj: Vec<Rational> = (0..=n)
            .map(|j| {
                let z: Rational = self
                    .basis
                    .iter()
                    .zip(&self.rows)
                    .map(|(&b, row)| &cost[b] * &row[j])
                    .sum();
                if j < n {
                    z - &cost[j]
                } else {
                    z
                }
            })
            .collect();

        loop {
            let Some(enter) = (0..n).find(|&j| allowed[j] && obj[j].is_negative()) else {
                return Some(obj[n].clone());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[n] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (r, _) = leave?;
            self.pivot(r, enter);
            let f = obj[enter].clone();
            if !f.is_zero() {
                for (o, p) in obj.iter_mut().zip(&self.rows[r]) {
                    *o -= &f * p;
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::from_integer(1.into()) / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.kinds[self.basis[i]] != ColKind::Artificial {
                i += 1;
                continue;
            }
            let replacement = (0..self.width())
                .find(|&j| self.kinds[j] != ColKind::Artificial && !self.rows[i][j].is_zero());
            match replacement {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    // redundant equality
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
