//! Allocation-only kernels for a relax-shrink-sample MaxCut heuristic.
//!
//! The crate is `no_std` (it needs `alloc`) and performs no IO. It covers:
//!
//! * [`graph`]: the weighted instance model, cut evaluation and dense closure.
//! * [`exact`]: an exhaustive MaxCut oracle for small instances.
//! * [`qubo`]: the QUBO to MaxCut reference-vertex transformation.
//! * [`lp`]: a bounded primal simplex and the triangle (cycle) relaxation.
//! * [`shrink`]: correlation-driven vertex contraction and solution reconstruction.
//! * [`qaoa`]: depth-1 QAOA, both as an exact statevector and in closed form.
//! * [`metrics`]: approximation ratio helpers.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod exact;
pub mod graph;
pub mod lp;
pub mod metrics;
pub mod qaoa;
pub mod qubo;
pub mod shrink;

pub use exact::{brute_force, brute_force_with_cap, ExactCutSummary, ExactError};
pub use graph::{cut_value, dense_closure, CutAssignment, GraphError, PairIndex, WeightedGraph};
pub use lp::{
    lp_solve, separate_triangles, solve_cycle_relaxation, FractionalSolution, LpError, LpProblem,
    TriangleConstraint, TriangleVariant,
};
pub use metrics::{approximation_ratio, MetricError};
pub use qaoa::{
    deviation_ratio, estimate_parameters, expectation_analytic, expectation_statevector,
    grid_search, qaoa_state, sample, Evaluator, Landscape, QaoaError, QaoaParams, QaoaState,
};
pub use qubo::{qubo_to_maxcut, QuboProblem};
pub use shrink::{
    correlations_from_relaxation, reconstruct, shrink_once, shrink_to_target, sigma_of,
    CorrelationSet, ShrinkError, ShrinkRecord, ShrinkState, Sign,
};
