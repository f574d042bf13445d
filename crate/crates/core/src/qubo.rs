//! QUBO instances and their MaxCut equivalent on one extra vertex.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::{CutAssignment, WeightedGraph};

/// `max Σ_{i ≤ j} q_ij x_i x_j` over `x ∈ {0,1}^n`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QuboProblem {
    n: usize,
    coefficients: BTreeMap<(usize, usize), f64>,
}

impl QuboProblem {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn variable_count(&self) -> usize {
        self.n
    }

    /// Adds `q` to the coefficient of `x_i x_j`; `(i, j)` and `(j, i)` share a slot.
    ///
    /// # Panics
    /// If either index is `>= n`.
    pub fn add(&mut self, i: usize, j: usize, q: f64) {
        assert!(i < self.n && j < self.n, "QUBO index out of range");
        let key = if i <= j { (i, j) } else { (j, i) };
        *self.coefficients.entry(key).or_insert(0.0) += q;
    }

    pub fn coefficient(&self, i: usize, j: usize) -> f64 {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.coefficients.get(&key).copied().unwrap_or(0.0)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.coefficients.iter().map(|(&k, &q)| (k, q))
    }

    pub fn objective(&self, x: &[bool]) -> f64 {
        self.coefficients
            .iter()
            .filter(|(&(i, j), _)| x[i] && x[j])
            .map(|(_, &q)| q)
            .sum()
    }
}

/// Reference-vertex MaxCut construction.
///
/// Vertex `0` is the reference; variable `x_i` becomes vertex `i + 1`, and
/// `x_i = 1` exactly when vertex `i + 1` is on the opposite shore to vertex 0.
/// With `c_ij` the cut indicator of a pair, `x_i = c_0i` and
/// `x_i x_j = (c_0i + c_0j - c_ij) / 2`, which gives
///
/// * `w(i+1, j+1) = -q_ij / 2` for `i < j`,
/// * `w(0, i+1) = q_ii + Σ_{j ≠ i} q_ij / 2`.
///
/// The cut value then equals the QUBO objective exactly, so the returned
/// offset (`cut = objective + offset`) is always zero.
pub fn qubo_to_maxcut(qubo: &QuboProblem) -> (WeightedGraph, f64) {
    let n = qubo.variable_count();
    let mut reference = alloc::vec![0.0; n];
    let mut edges = Vec::new();
    for ((i, j), q) in qubo.coefficients() {
        if i == j {
            reference[i] += q;
        } else {
            reference[i] += q / 2.0;
            reference[j] += q / 2.0;
            edges.push((i + 1, j + 1, -q / 2.0));
        }
    }
    edges.extend(
        reference
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0.0)
            .map(|(i, &w)| (0, i + 1, w)),
    );
    let graph = WeightedGraph::new(n + 1, edges).expect("reference construction is well-formed");
    (graph, 0.0)
}

/// Reads the QUBO variables back off a cut of the transformed graph.
pub fn qubo_assignment(cut: &CutAssignment) -> Vec<bool> {
    let reference = cut.side(0);
    cut.sides()[1..].iter().map(|&s| s != reference).collect()
}
