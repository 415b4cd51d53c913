//! Exact rational linear programming: a dense two-phase tableau simplex
//! with Bland's anti-cycling rule.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("constraint {row} has {got} coefficients, expected {expected}")]
    RowLength { row: usize, got: usize, expected: usize },
    #[error("{got} variable bounds given for {expected} variables")]
    BoundsLength { got: usize, expected: usize },
    #[error("the program has no variables")]
    NoVariables,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarBound {
    NonNegative,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `minimize objective · x` subject to the constraints and variable bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<VarBound>,
}

impl LinearProgram {
    /// A program over nonnegative variables with no constraints yet.
    pub fn minimize(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            constraints: Vec::new(),
            bounds: vec![VarBound::NonNegative; n],
        }
    }

    pub fn with_bound(mut self, var: usize, bound: VarBound) -> Self {
        self.bounds[var] = bound;
        self
    }

    pub fn constrain(mut self, coefficients: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
        self
    }

    pub fn variables(&self) -> usize {
        self.objective.len()
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.objective.len();
        if n == 0 {
            return Err(LpError::NoVariables);
        }
        if self.bounds.len() != n {
            return Err(LpError::BoundsLength {
                got: self.bounds.len(),
                expected: n,
            });
        }
        for (row, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                return Err(LpError::RowLength {
                    row,
                    got: c.coefficients.len(),
                    expected: n,
                });
            }
        }
        Ok(())
    }

    /// Whether `x` satisfies every constraint and bound exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.variables() {
            return false;
        }
        let bounds_ok = x
            .iter()
            .zip(&self.bounds)
            .all(|(v, b)| *b == VarBound::Free || !v.is_negative());
        bounds_ok
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coefficients.iter().zip(x).map(|(a, v)| a * v).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// constraint rows; last entry of each row is the right-hand side
    rows: Vec<Vec<Rational>>,
    /// reduced costs, last entry is minus the objective value
    cost: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn set_cost(&mut self, c: &[Rational]) {
        let mut cost: Vec<Rational> = c.to_vec();
        cost.push(Rational::zero());
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &c[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (k, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    cost[k] -= cb * a;
                }
            }
        }
        self.cost = cost;
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        if !p.is_one() {
            for a in self.rows[r].iter_mut() {
                if !a.is_zero() {
                    *a = &*a / &p;
                }
            }
        }
        let support: Vec<usize> = (0..=self.cols).filter(|&k| !self.rows[r][k].is_zero()).collect();
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[j].clone();
            if f.is_zero() {
                return;
            }
            for &k in &support {
                row[k] -= &f * &pivot_row[k];
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = j;
    }

    /// Runs Bland's rule over the columns `allowed` permits.
    fn optimize(&mut self, allowed: &dyn Fn(usize) -> bool) -> Result<(), ()> {
        loop {
            let Some(j) = (0..self.cols).find(|&k| allowed(k) && self.cost[k].is_negative()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[j];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, j),
                None => return Err(()),
            }
        }
    }
}

/// Solves `lp` exactly. Infeasible and unbounded programs are outcomes, not errors.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    lp.validate()?;
    let n = lp.variables();

    // structural columns: one per nonnegative variable, two per free one
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut structural = 0;
    for b in &lp.bounds {
        match b {
            VarBound::NonNegative => {
                col_of.push((structural, None));
                structural += 1;
            }
            VarBound::Free => {
                col_of.push((structural, Some(structural + 1)));
                structural += 2;
            }
        }
    }

    // normalise to nonnegative right-hand sides
    let rows: Vec<(Vec<Rational>, Relation, Rational)> = lp
        .constraints
        .iter()
        .map(|c| {
            let mut coeffs = vec![Rational::zero(); structural];
            for (v, a) in c.coefficients.iter().enumerate() {
                let (plus, minus) = col_of[v];
                coeffs[plus] = a.clone();
                if let Some(m) = minus {
                    coeffs[m] = -a;
                }
            }
            if c.rhs.is_negative() {
                let flipped = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (coeffs.iter().map(|a| -a).collect(), flipped, -&c.rhs)
            } else {
                (coeffs, c.relation, c.rhs.clone())
            }
        })
        .collect();

    let slack_count = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let art_count = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let first_slack = structural;
    let first_art = structural + slack_count;
    let cols = first_art + art_count;

    let mut tableau_rows = Vec::with_capacity(rows.len());
    let mut basis = Vec::with_capacity(rows.len());
    let (mut next_slack, mut next_art) = (first_slack, first_art);
    for (coeffs, rel, rhs) in rows {
        let mut row = coeffs;
        row.resize(cols + 1, Rational::zero());
        row[cols] = rhs;
        match rel {
            Relation::Le => {
                row[next_slack] = Rational::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        tableau_rows.push(row);
    }
    let mut t = Tableau {
        rows: tableau_rows,
        cost: Vec::new(),
        basis,
        cols,
    };
    let is_art = |k: usize| k >= first_art;

    if art_count > 0 {
        let phase1: Vec<Rational> = (0..cols)
            .map(|k| if is_art(k) { Rational::one() } else { Rational::zero() })
            .collect();
        t.set_cost(&phase1);
        t.optimize(&|_| true)
            .expect("phase one is bounded below by zero");
        if !t.cost[cols].is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        // drive zero-level artificials out of the basis, dropping redundant rows
        let mut r = 0;
        while r < t.rows.len() {
            if is_art(t.basis[r]) {
                match (0..first_art).find(|&k| !t.rows[r][k].is_zero()) {
                    Some(k) => {
                        t.pivot(r, k);
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

    let mut phase2 = vec![Rational::zero(); cols];
    for (v, c) in lp.objective.iter().enumerate() {
        let (plus, minus) = col_of[v];
        phase2[plus] = c.clone();
        if let Some(m) = minus {
            phase2[m] = -c;
        }
    }
    t.set_cost(&phase2);
    if t.optimize(&|k| !is_art(k)).is_err() {
        return Ok(LpOutcome::Unbounded);
    }

    let mut col_value = vec![Rational::zero(); cols];
    for (i, &b) in t.basis.iter().enumerate() {
        col_value[b] = t.rows[i][cols].clone();
    }
    let x: Vec<Rational> = col_of
        .iter()
        .map(|&(plus, minus)| match minus {
            Some(m) => &col_value[plus] - &col_value[m],
            None => col_value[plus].clone(),
        })
        .collect();
    let value = lp.objective_value(&x);
    debug_assert!(lp.is_feasible(&x));
    debug_assert_eq!(value, -t.cost[cols].clone());
    Ok(LpOutcome::Optimal { x, value })
}
