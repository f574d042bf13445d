//! Linear programming: a bundled simplex and the triangle relaxation of MaxCut.

mod relaxation;
mod simplex;

use alloc::vec::Vec;
use core::fmt;

pub use relaxation::{
    separate_triangles, separate_triangles_capped, solve_cycle_relaxation,
    solve_cycle_relaxation_with, FractionalSolution, RelaxationOptions, TriangleConstraint,
    TriangleVariant, MAX_CUTS_PER_ROUND,
};
pub use simplex::{FEASIBILITY_TOL, PIVOT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub enum LpError {
    /// A constraint row references a variable past the end of the objective.
    InvalidVariable { row: usize, variable: usize },
    /// Phase 1 could not drive the artificial variables to zero.
    Infeasible { infeasibility: f64 },
    /// The ratio test found no blocking row or bound.
    Unbounded,
    /// The pivot budget ran out, usually through degenerate cycling.
    IterationLimit { iterations: usize },
    /// The returned point violates a row or bound beyond tolerance.
    NumericalFailure { violation: f64 },
    /// The separation loop did not converge within its round budget.
    SeparationLimit { rounds: usize },
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidVariable { row, variable } => {
                write!(f, "row {row} references unknown variable {variable}")
            }
            Self::Infeasible { infeasibility } => {
                write!(f, "LP infeasible (phase-1 residual {infeasibility:e})")
            }
            Self::Unbounded => write!(f, "LP unbounded"),
            Self::IterationLimit { iterations } => {
                write!(f, "simplex stopped after {iterations} pivots")
            }
            Self::NumericalFailure { violation } => {
                write!(f, "simplex returned a point violating a constraint by {violation:e}")
            }
            Self::SeparationLimit { rounds } => {
                write!(f, "triangle separation did not converge in {rounds} rounds")
            }
        }
    }
}

impl core::error::Error for LpError {}

/// One `≤` row in sparse form.
#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub coefficients: Vec<(usize, f64)>,
    pub rhs: f64,
}

impl LpRow {
    pub fn new(coefficients: Vec<(usize, f64)>, rhs: f64) -> Self {
        Self { coefficients, rhs }
    }

    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coefficients.iter().map(|&(j, a)| a * x[j]).sum()
    }
}

/// `maximize objective·x` subject to `≤` rows and `0 ≤ x ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    objective: Vec<f64>,
    constraints: Vec<LpRow>,
}

impl LpProblem {
    pub fn new(objective: Vec<f64>, constraints: Vec<LpRow>) -> Self {
        Self {
            objective,
            constraints,
        }
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> &[LpRow] {
        &self.constraints
    }

    pub fn push(&mut self, row: LpRow) {
        self.constraints.push(row);
    }

    /// Largest violation of any row or bound at `x`, zero when feasible.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let bounds = x
            .iter()
            .map(|&v| (-v).max(v - 1.0))
            .fold(0.0f64, f64::max);
        self.constraints
            .iter()
            .map(|row| row.activity(x) - row.rhs)
            .fold(bounds, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    pub pivots: usize,
}

/// Solves the LP to an optimal basic solution.
///
/// The result is deterministic for a given problem. A point that fails the
/// final feasibility check is reported as [`LpError::NumericalFailure`].
pub fn lp_solve(problem: &LpProblem) -> Result<LpSolution, LpError> {
    simplex::solve(problem)
}
