//! Exhaustive MaxCut oracle for small instances.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{CutAssignment, WeightedGraph};

/// Default vertex limit for exhaustive enumeration.
pub const DEFAULT_VERTEX_CAP: usize = 24;

/// Hard limit imposed by the 64-bit assignment encoding.
const ENCODING_LIMIT: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    /// The instance has more vertices than the enumeration cap allows.
    CapExceeded { vertex_count: usize, cap: usize },
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CapExceeded { vertex_count, cap } => write!(
                f,
                "exhaustive enumeration capped at {cap} vertices, instance has {vertex_count}"
            ),
        }
    }
}

impl core::error::Error for ExactError {}

/// Extremes of the cut value over every bipartition, including `W = ∅`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactCutSummary {
    pub max_value: f64,
    pub min_value: f64,
    /// Maximizer with the lowest binary encoding (bit `i` is vertex `i`).
    pub argmax: CutAssignment,
    /// Number of bipartitions `{W, V \ W}` attaining the maximum.
    pub optimum_count: u64,
}

/// [`brute_force_with_cap`] with the default 24-vertex cap.
pub fn brute_force(graph: &WeightedGraph) -> Result<ExactCutSummary, ExactError> {
    brute_force_with_cap(graph, DEFAULT_VERTEX_CAP)
}

/// Enumerates all `2^(n-1)` bipartitions in Gray-code order.
///
/// The last vertex is pinned to the `false` shore, which picks the
/// lower-encoded member of every complementary pair.
pub fn brute_force_with_cap(
    graph: &WeightedGraph,
    cap: usize,
) -> Result<ExactCutSummary, ExactError> {
    let n = graph.vertex_count();
    let cap = cap.min(ENCODING_LIMIT);
    if n > cap {
        return Err(ExactError::CapExceeded {
            vertex_count: n,
            cap,
        });
    }
    if n <= 1 {
        return Ok(ExactCutSummary {
            max_value: 0.0,
            min_value: 0.0,
            argmax: CutAssignment::all_false(n),
            optimum_count: 1,
        });
    }

    let adjacency = graph.adjacency();
    let mut best = Extreme::new();
    let mut worst = Extreme::new();
    walk_gray_code(n - 1, &adjacency, |bits, value| {
        best.offer(value, bits);
        worst.offer(-value, bits);
    });

    // Recompute the extremes exactly; the incremental walk may drift on real weights.
    let max_value = graph.cut_value_bits(best.bits);
    let min_value = graph.cut_value_bits(worst.bits);
    let tol = 1e-9 * max_value.abs().max(1.0);
    let mut optimum_count = 0u64;
    walk_gray_code(n - 1, &adjacency, |_, value| {
        if (value - max_value).abs() <= tol {
            optimum_count += 1;
        }
    });

    Ok(ExactCutSummary {
        max_value,
        min_value,
        argmax: CutAssignment::from_bits(best.bits, n),
        optimum_count,
    })
}

/// Running maximum that resolves exact ties toward the lower encoding.
struct Extreme {
    value: f64,
    bits: u64,
}

impl Extreme {
    fn new() -> Self {
        Self {
            value: f64::NEG_INFINITY,
            bits: 0,
        }
    }

    fn offer(&mut self, value: f64, bits: u64) {
        if value > self.value || (value == self.value && bits < self.bits) {
            self.value = value;
            self.bits = bits;
        }
    }
}

/// Visits every assignment of the low `free` vertices, others fixed to `false`.
fn walk_gray_code<F>(free: usize, adjacency: &[Vec<(usize, f64)>], mut visit: F)
where
    F: FnMut(u64, f64),
{
    let mut bits = 0u64;
    let mut value = 0.0;
    visit(bits, value);
    for step in 1..(1u64 << free) {
        let vertex = step.trailing_zeros() as usize;
        let side = (bits >> vertex) & 1;
        // Flipping `vertex` toggles every incident edge between cut and uncut.
        let delta: f64 = adjacency[vertex]
            .iter()
            .map(|&(t, w)| if (bits >> t) & 1 == side { w } else { -w })
            .sum();
        bits ^= 1 << vertex;
        value += delta;
        visit(bits, value);
    }
}
