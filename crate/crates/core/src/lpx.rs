//! Exact rational linear programming.
//!
//! Problems are stated as `minimize <c, x>` subject to `A x >= b` with free
//! variables. The solver is a two-phase primal simplex on a dense tableau
//! using Bland's rule, so it terminates on degenerate problems and gives the
//! same answer for the same input every time.

use num_traits::{Signed, Zero};

use crate::ratlin::RatVector;
use crate::{Error, Rat, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    objective: RatVector,
    rows: Vec<RatVector>,
    rhs: RatVector,
}

impl LinearProgram {
    pub fn new(objective: RatVector, rows: Vec<RatVector>, rhs: RatVector) -> Result<Self> {
        if rows.len() != rhs.len() {
            return Err(Error::DimensionMismatch { expected: rows.len(), found: rhs.len() });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != objective.len()) {
            return Err(Error::DimensionMismatch { expected: objective.len(), found: bad.len() });
        }
        Ok(LinearProgram { objective, rows, rhs })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rat] {
        &self.objective
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn rhs(&self) -> &[Rat] {
        &self.rhs
    }

    /// True iff `x` satisfies every constraint exactly.
    pub fn satisfies(&self, x: &[Rat]) -> bool {
        self.rows
            .iter()
            .zip(&self.rhs)
            .all(|(r, b)| crate::ratlin::dot_rat(r, x) >= *b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpVerdict {
    Optimal { value: Rat, point: RatVector },
    Infeasible,
    Unbounded,
}

impl LpVerdict {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpVerdict::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    /// constraint rows; the last entry of each row is the right-hand side
    rows: Vec<RatVector>,
    /// reduced-cost row; last entry is minus the objective value
    cost: RatVector,
    basis: Vec<usize>,
    width: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (x, p) in self.cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Installs `costs` (one per column) as the objective, priced out against
    /// the current basis.
    fn set_costs(&mut self, costs: &[Rat]) {
        let mut z: RatVector = costs.to_vec();
        z.push(Rat::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (x, a) in z.iter_mut().zip(row) {
                *x -= cb * a;
            }
        }
        self.cost = z;
    }

    /// Bland's rule: lowest-index improving column enters; among tied ratios
    /// the row whose basic variable has the lowest index leaves.
    fn run(&mut self, allowed: impl Fn(usize) -> bool) -> Outcome {
        loop {
            let entering = (0..self.width).find(|&j| allowed(j) && self.cost[j].is_negative());
            let Some(c) = entering else { return Outcome::Optimal };
            let mut leave: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[c];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Outcome::Unbounded,
            }
        }
    }

    fn basic_values(&self) -> RatVector {
        let mut x = vec![Rat::zero(); self.width];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            x[b] = row[self.width].clone();
        }
        x
    }
}

/// Column layout: `x+ (n) | x- (n) | surplus (m) | artificial (one per row that needs it)`.
struct Standard {
    tableau: Tableau,
    n: usize,
    first_artificial: usize,
}

fn phase_one(rows: &[RatVector], rhs: &[Rat], n: usize) -> Option<Standard> {
    let m = rows.len();
    let needs_art: Vec<bool> = rhs.iter().map(|b| b.is_positive()).collect();
    let n_art = needs_art.iter().filter(|&&x| x).count();
    let first_artificial = 2 * n + m;
    let width = first_artificial + n_art;

    let mut trows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = first_artificial;
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        let mut t = vec![Rat::zero(); width + 1];
        // A_i x+ - A_i x- - s_i = b_i, negated when b_i <= 0 so the surplus can start basic
        let sign = if needs_art[i] { Rat::from_integer(1.into()) } else { Rat::from_integer((-1).into()) };
        for j in 0..n {
            t[j] = &row[j] * &sign;
            t[n + j] = -&t[j];
        }
        t[2 * n + i] = -sign.clone();
        t[width] = b * &sign;
        if needs_art[i] {
            t[next_art] = Rat::from_integer(1.into());
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(2 * n + i);
        }
        trows.push(t);
    }

    let mut tableau = Tableau { rows: trows, cost: Vec::new(), basis, width };
    if n_art > 0 {
        let costs: RatVector = (0..width)
            .map(|j| if j >= first_artificial { Rat::from_integer(1.into()) } else { Rat::zero() })
            .collect();
        tableau.set_costs(&costs);
        tableau.run(|_| true);
        // remaining objective value is -cost[width]
        if !tableau.cost[width].is_zero() {
            return None;
        }
        // drive zero-level artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < tableau.rows.len() {
            if tableau.basis[i] >= first_artificial {
                match (0..first_artificial).find(|&j| !tableau.rows[i][j].is_zero()) {
                    Some(j) => {
                        tableau.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tableau.rows.remove(i);
                        tableau.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }
    Some(Standard { tableau, n, first_artificial })
}

/// Solves the program exactly.
pub fn solve(lp: &LinearProgram) -> LpVerdict {
    let n = lp.num_vars();
    let Some(mut std) = phase_one(&lp.rows, &lp.rhs, n) else {
        return LpVerdict::Infeasible;
    };
    let width = std.tableau.width;
    let mut costs = vec![Rat::zero(); width];
    for j in 0..n {
        costs[j] = lp.objective[j].clone();
        costs[n + j] = -&lp.objective[j];
    }
    std.tableau.set_costs(&costs);
    let first_artificial = std.first_artificial;
    match std.tableau.run(|j| j < first_artificial) {
        Outcome::Unbounded => LpVerdict::Unbounded,
        Outcome::Optimal => {
            let z = std.tableau.basic_values();
            let point: RatVector = (0..std.n).map(|j| &z[j] - &z[std.n + j]).collect();
            let value = crate::ratlin::dot_rat(&lp.objective, &point);
            LpVerdict::Optimal { value, point }
        }
    }
}

/// Phase-one feasibility of `{x : A x >= b}`. An empty system is feasible.
pub fn feasible(rows: &[RatVector], rhs: &[Rat]) -> bool {
    let n = rows.first().map_or(0, Vec::len);
    phase_one(rows, rhs, n).is_some()
}

/// A feasible point of `{x : A x >= b}`, if one exists.
pub fn feasible_point(rows: &[RatVector], rhs: &[Rat], n: usize) -> Option<RatVector> {
    let std = phase_one(rows, rhs, n)?;
    let z = std.tableau.basic_values();
    Some((0..n).map(|j| &z[j] - &z[n + j]).collect())
}

/// Minimizes `<c, x>` over `{x : A x >= b}`.
pub fn minimize(c: &[Rat], rows: &[RatVector], rhs: &[Rat]) -> LpVerdict {
    let lp = LinearProgram { objective: c.to_vec(), rows: rows.to_vec(), rhs: rhs.to_vec() };
    solve(&lp)
}
