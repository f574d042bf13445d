//! Depth-1 QAOA for weighted MaxCut.
//!
//! The phase operator multiplies basis state `x` by `e^{-iγ C(x)}` where
//! `C(x)` is the cut value; the mixer applies `e^{-iβ X}` to every qubit.
//! Basis index bit `i` is the side of vertex `i`.

mod analytic;
mod landscape;
mod statevector;

use core::f64::consts::PI;
use core::fmt;

use crate::graph::WeightedGraph;

pub use analytic::{expectation_analytic, expectation_analytic_capped, MAX_COMMON_NEIGHBORS};
pub use landscape::{deviation_ratio, grid_points, grid_search, Evaluator, Landscape};
pub use statevector::{
    cut_table, expectation_statevector, qaoa_state, sample, sample_bits, QaoaState, MAX_QUBITS,
};

#[derive(Debug, Clone, PartialEq)]
pub enum QaoaError {
    /// The statevector would need more than [`MAX_QUBITS`] qubits.
    TooManyQubits { qubits: usize, cap: usize },
    /// An edge has more common neighbors than the odd-subset sum allows.
    CommonNeighborhoodTooLarge {
        u: usize,
        v: usize,
        size: usize,
        cap: usize,
    },
    /// The graph has no nonzero-weight edge.
    NoEdges,
    /// Average degree `d̄ ≤ 1` leaves `arctan(1/√(d̄-1))` undefined.
    DegreeTooLow { average_degree: f64 },
    /// Grid step must be positive and finite.
    InvalidStep { step: f64 },
}

impl fmt::Display for QaoaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooManyQubits { qubits, cap } => {
                write!(f, "{qubits} qubits exceed the statevector cap of {cap}")
            }
            Self::CommonNeighborhoodTooLarge { u, v, size, cap } => write!(
                f,
                "edge ({u}, {v}) has {size} common neighbours, closed form capped at {cap}"
            ),
            Self::NoEdges => write!(f, "graph has no nonzero-weight edges"),
            Self::DegreeTooLow { average_degree } => {
                write!(f, "average degree {average_degree} must exceed 1")
            }
            Self::InvalidStep { step } => write!(f, "grid step {step} must be positive"),
        }
    }
}

impl core::error::Error for QaoaError {}

/// Phase angle `γ` and mixer angle `β` of a depth-1 circuit, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QaoaParams {
    pub gamma: f64,
    pub beta: f64,
}

impl QaoaParams {
    pub fn new(gamma: f64, beta: f64) -> Self {
        Self { gamma, beta }
    }
}

/// Mean absolute weight and average degree over nonzero-weight edges.
pub fn weight_statistics(graph: &WeightedGraph) -> Option<(f64, f64)> {
    let (count, total) = graph
        .nonzero_edges()
        .fold((0usize, 0.0), |(c, s), e| (c + 1, s + e.weight.abs()));
    if count == 0 {
        return None;
    }
    let mean_abs_weight = total / count as f64;
    let average_degree = 2.0 * count as f64 / graph.vertex_count() as f64;
    Some((mean_abs_weight, average_degree))
}

/// `γ̄ = arctan(1/√(d̄-1)) / ā`, `β̄ = π/8`.
///
/// `ā` is the mean absolute weight and `d̄` the average vertex degree, both
/// counting only nonzero-weight edges. On triangle-free `d`-regular graphs
/// with weights in `{-a, a}` this is the exact maximizer of the expectation.
pub fn estimate_parameters(graph: &WeightedGraph) -> Result<QaoaParams, QaoaError> {
    let (mean_abs_weight, average_degree) = weight_statistics(graph).ok_or(QaoaError::NoEdges)?;
    if average_degree <= 1.0 {
        return Err(QaoaError::DegreeTooLow { average_degree });
    }
    let gamma = libm::atan(1.0 / libm::sqrt(average_degree - 1.0)) / mean_abs_weight;
    Ok(QaoaParams::new(gamma, PI / 8.0))
}
