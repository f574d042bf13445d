//! Dense-tableau primal simplex for `max c·x, A x ≤ b, 0 ≤ x ≤ 1`.
//!
//! Variable bounds are handled implicitly: a nonbasic column sits at its lower
//! or upper bound and the ratio test includes the bound flip. Rows with a
//! negative right-hand side get an artificial column and a phase-1 pass.

use alloc::vec;
use alloc::vec::Vec;

use super::{LpError, LpProblem, LpSolution};

/// Smallest tableau entry accepted as a pivot.
pub const PIVOT_TOL: f64 = 1e-9;
/// Feasibility tolerance applied when validating the final point.
pub const FEASIBILITY_TOL: f64 = 1e-6;
/// Reduced-cost threshold for an improving column.
const OPTIMALITY_TOL: f64 = 1e-9;
/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_STREAK_LIMIT: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Pricing {
    Dantzig,
    Bland,
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// `B^-1 [A | S | R]`, row-major.
    body: Vec<f64>,
    /// Values of the basic variables, one per row.
    beta: Vec<f64>,
    basis: Vec<usize>,
    upper: Vec<f64>,
    at_upper: Vec<bool>,
    is_basic: Vec<bool>,
    reduced: Vec<f64>,
    pivots: usize,
}

impl Tableau {
    fn new(problem: &LpProblem) -> Result<Self, LpError> {
        let n = problem.variable_count();
        let m = problem.constraints().len();
        let negative: Vec<usize> = problem
            .constraints()
            .iter()
            .enumerate()
            .filter(|(_, row)| row.rhs < 0.0)
            .map(|(i, _)| i)
            .collect();
        let cols = n + m + negative.len();
        let mut body = vec![0.0; m * cols];
        let mut beta = vec![0.0; m];
        let mut basis = vec![0; m];
        let mut artificial = n + m;
        for (i, row) in problem.constraints().iter().enumerate() {
            let sign = if row.rhs < 0.0 { -1.0 } else { 1.0 };
            let line = &mut body[i * cols..(i + 1) * cols];
            for &(j, a) in &row.coefficients {
                if j >= n {
                    return Err(LpError::InvalidVariable {
                        row: i,
                        variable: j,
                    });
                }
                line[j] += sign * a;
            }
            line[n + i] = sign;
            beta[i] = sign * row.rhs;
            if row.rhs < 0.0 {
                line[artificial] = 1.0;
                basis[i] = artificial;
                artificial += 1;
            } else {
                basis[i] = n + i;
            }
        }
        let mut upper = vec![f64::INFINITY; cols];
        upper[..n].fill(1.0);
        let mut is_basic = vec![false; cols];
        for &b in &basis {
            is_basic[b] = true;
        }
        Ok(Self {
            rows: m,
            cols,
            body,
            beta,
            basis,
            upper,
            at_upper: vec![false; cols],
            is_basic,
            reduced: vec![0.0; cols],
            pivots: 0,
        })
    }

    fn value(&self, j: usize) -> f64 {
        if self.is_basic[j] {
            let r = self.basis.iter().position(|&b| b == j).expect("basic column has a row");
            self.beta[r]
        } else if self.at_upper[j] {
            self.upper[j]
        } else {
            0.0
        }
    }

    fn price(&mut self, cost: &[f64]) {
        self.reduced.copy_from_slice(cost);
        for i in 0..self.rows {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                let row = &self.body[i * self.cols..(i + 1) * self.cols];
                for (d, &t) in self.reduced.iter_mut().zip(row) {
                    *d -= cb * t;
                }
            }
        }
    }

    fn entering(&self, pricing: Pricing) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.cols {
            if self.is_basic[j] || self.upper[j] <= 0.0 {
                continue;
            }
            let d = self.reduced[j];
            let gain = if self.at_upper[j] { -d } else { d };
            if gain <= OPTIMALITY_TOL {
                continue;
            }
            match pricing {
                Pricing::Bland => return Some(j),
                Pricing::Dantzig => {
                    if best.is_none_or(|(_, g)| gain > g) {
                        best = Some((j, gain));
                    }
                }
            }
        }
        best.map(|(j, _)| j)
    }

    /// Runs simplex iterations for `cost` until optimal; returns iterations used.
    fn optimize(&mut self, cost: &[f64], iteration_cap: usize) -> Result<(), LpError> {
        self.price(cost);
        let mut pricing = Pricing::Dantzig;
        let mut degenerate_streak = 0;
        loop {
            let Some(j) = self.entering(pricing) else {
                return Ok(());
            };
            if self.pivots >= iteration_cap {
                return Err(LpError::IterationLimit {
                    iterations: self.pivots,
                });
            }
            self.pivots += 1;
            let dir = if self.at_upper[j] { -1.0 } else { 1.0 };

            // Ratio test: (step, row, leaving variable ends at its upper bound).
            let mut step = self.upper[j];
            let mut leave: Option<(usize, bool)> = None;
            let mut leave_alpha = 0.0;
            for i in 0..self.rows {
                let alpha = dir * self.body[i * self.cols + j];
                if alpha.abs() <= PIVOT_TOL {
                    continue;
                }
                let b = self.basis[i];
                let (limit, to_upper) = if alpha > 0.0 {
                    (self.beta[i].max(0.0) / alpha, false)
                } else if self.upper[b].is_finite() {
                    ((self.upper[b] - self.beta[i]).max(0.0) / -alpha, true)
                } else {
                    continue;
                };
                let better = if limit < step - 1e-12 {
                    true
                } else if limit <= step + 1e-12 {
                    match leave {
                        None => true,
                        Some((r, _)) => match pricing {
                            Pricing::Bland => b < self.basis[r],
                            Pricing::Dantzig => alpha.abs() > leave_alpha,
                        },
                    }
                } else {
                    false
                };
                if better {
                    step = limit;
                    leave = Some((i, to_upper));
                    leave_alpha = alpha.abs();
                }
            }
            if !step.is_finite() {
                return Err(LpError::Unbounded);
            }

            if step <= 1e-12 {
                degenerate_streak += 1;
                if degenerate_streak >= DEGENERATE_STREAK_LIMIT {
                    pricing = Pricing::Bland;
                }
            } else {
                degenerate_streak = 0;
            }

            for i in 0..self.rows {
                let t = self.body[i * self.cols + j];
                if t != 0.0 {
                    self.beta[i] -= dir * t * step;
                }
            }
            let entering_value = if dir > 0.0 { step } else { self.upper[j] - step };

            match leave {
                None => {
                    // Bound flip, the basis is unchanged.
                    self.at_upper[j] = !self.at_upper[j];
                }
                Some((r, to_upper)) => {
                    let leaving = self.basis[r];
                    self.is_basic[leaving] = false;
                    self.at_upper[leaving] = to_upper;
                    self.basis[r] = j;
                    self.is_basic[j] = true;
                    self.at_upper[j] = false;
                    self.beta[r] = entering_value;
                    self.pivot(r, j);
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let cols = self.cols;
        let p = self.body[r * cols + j];
        let mut nonzero = Vec::new();
        for c in 0..cols {
            let v = &mut self.body[r * cols + c];
            if *v != 0.0 {
                *v /= p;
                nonzero.push(c);
            }
        }
        self.body[r * cols + j] = 1.0;
        let pivot_row: Vec<(usize, f64)> = nonzero
            .iter()
            .map(|&c| (c, self.body[r * cols + c]))
            .collect();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let factor = self.body[i * cols + j];
            if factor == 0.0 {
                continue;
            }
            let line = &mut self.body[i * cols..(i + 1) * cols];
            for &(c, v) in &pivot_row {
                line[c] -= factor * v;
            }
            line[j] = 0.0;
        }
        let factor = self.reduced[j];
        if factor != 0.0 {
            for &(c, v) in &pivot_row {
                self.reduced[c] -= factor * v;
            }
            self.reduced[j] = 0.0;
        }
    }
}

pub(super) fn solve(problem: &LpProblem) -> Result<LpSolution, LpError> {
    let n = problem.variable_count();
    let m = problem.constraints().len();
    let mut tableau = Tableau::new(problem)?;
    let iteration_cap = 50_000 + 50 * (n + m);

    let artificial = n + m..tableau.cols;
    if !artificial.is_empty() {
        let mut cost = vec![0.0; tableau.cols];
        cost[artificial.clone()].fill(-1.0);
        tableau.optimize(&cost, iteration_cap)?;
        let infeasibility: f64 = artificial.clone().map(|j| tableau.value(j)).sum();
        if infeasibility > FEASIBILITY_TOL {
            return Err(LpError::Infeasible { infeasibility });
        }
        // Pin the artificials to zero; basic ones stay harmlessly degenerate.
        for j in artificial {
            tableau.upper[j] = 0.0;
        }
    }

    let mut cost = vec![0.0; tableau.cols];
    cost[..n].copy_from_slice(problem.objective());
    tableau.optimize(&cost, iteration_cap)?;

    let mut x: Vec<f64> = (0..n).map(|j| tableau.value(j)).collect();
    for v in &mut x {
        if *v < 0.0 && *v > -FEASIBILITY_TOL {
            *v = 0.0;
        } else if *v > 1.0 && *v < 1.0 + FEASIBILITY_TOL {
            *v = 1.0;
        }
    }
    let violation = problem.max_violation(&x);
    if violation > FEASIBILITY_TOL {
        return Err(LpError::NumericalFailure { violation });
    }
    let value = problem.objective().iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution {
        x,
        value,
        pivots: tableau.pivots,
    })
}
