//! Weighted undirected graphs, cut assignments and cut evaluation.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised while building graphs or evaluating cuts.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphError {
    /// An edge endpoint is not a valid vertex id.
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    /// An edge joins a vertex to itself.
    SelfLoop { vertex: usize },
    /// An edge weight is NaN or infinite.
    NonFiniteWeight { u: usize, v: usize },
    /// A cut assignment does not cover exactly the vertices of the graph.
    LengthMismatch { expected: usize, found: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::VertexOutOfRange {
                vertex,
                vertex_count,
            } => write!(f, "vertex {vertex} out of range for {vertex_count} vertices"),
            Self::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Self::NonFiniteWeight { u, v } => write!(f, "non-finite weight on edge ({u}, {v})"),
            Self::LengthMismatch { expected, found } => {
                write!(f, "assignment has {found} entries, graph has {expected} vertices")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// A single undirected edge, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// An undirected weighted graph: the MaxCut instance.
///
/// Edges are canonical (`u < v`), sorted lexicographically, and unique per
/// unordered pair. Parallel edges handed to [`WeightedGraph::new`] are merged by
/// summing their weights. Zero-weight edges are kept as given.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Builds a graph from `(u, v, weight)` triples with 0-based ids.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut canonical = Vec::new();
        for (a, b, weight) in edges {
            for vertex in [a, b] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            if !weight.is_finite() {
                return Err(GraphError::NonFiniteWeight { u: a, v: b });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            canonical.push(Edge { u, v, weight });
        }
        // Stable sort keeps the summation order of duplicates deterministic.
        canonical.sort_by_key(|e| (e.u, e.v));
        let mut merged: Vec<Edge> = Vec::with_capacity(canonical.len());
        for edge in canonical {
            match merged.last_mut() {
                Some(last) if last.u == edge.u && last.v == edge.v => last.weight += edge.weight,
                _ => merged.push(edge),
            }
        }
        Ok(Self {
            vertex_count,
            edges: merged,
        })
    }

    /// A graph with `vertex_count` vertices and no edges.
    pub fn empty(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Weight of the pair `{u, v}`, or `None` when no edge is stored.
    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&key))
            .ok()
            .map(|i| self.edges[i].weight)
    }

    /// Sum of all edge weights.
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().fold(0.0, |acc, e| acc + e.weight)
    }

    /// Edges carrying a nonzero weight.
    pub fn nonzero_edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(|e| e.weight != 0.0)
    }

    /// Copy of the graph with every zero-weight edge dropped.
    pub fn without_zero_edges(&self) -> Self {
        Self {
            vertex_count: self.vertex_count,
            edges: self.nonzero_edges().copied().collect(),
        }
    }

    /// Copy of the graph with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    weight: e.weight * factor,
                    ..*e
                })
                .collect(),
        }
    }

    /// Neighbor lists `(neighbor, weight)` in ascending neighbor order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adjacency = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adjacency[e.u].push((e.v, e.weight));
            adjacency[e.v].push((e.u, e.weight));
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(t, _)| t);
        }
        adjacency
    }

    /// Dense symmetric weight matrix, row-major, zero where no edge exists.
    pub fn weight_matrix(&self) -> Vec<f64> {
        let n = self.vertex_count;
        let mut matrix = vec![0.0; n * n];
        for e in &self.edges {
            matrix[e.u * n + e.v] = e.weight;
            matrix[e.v * n + e.u] = e.weight;
        }
        matrix
    }

    /// Cut value for a bitmask assignment (bit `i` is the side of vertex `i`).
    ///
    /// Only valid for graphs with at most 64 vertices; callers check that.
    pub(crate) fn cut_value_bits(&self, bits: u64) -> f64 {
        self.edges
            .iter()
            .filter(|e| ((bits >> e.u) ^ (bits >> e.v)) & 1 == 1)
            .fold(0.0, |acc, e| acc + e.weight)
    }
}

/// Side of every vertex: `true` means the vertex belongs to the shore `W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutAssignment(Vec<bool>);

impl CutAssignment {
    /// The empty shore `W = ∅`.
    pub fn all_false(len: usize) -> Self {
        Self(vec![false; len])
    }

    pub fn from_sides(sides: Vec<bool>) -> Self {
        Self(sides)
    }

    /// Decodes the low `len` bits of `bits`, bit `i` giving the side of vertex `i`.
    pub fn from_bits(bits: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        Self((0..len).map(|i| (bits >> i) & 1 == 1).collect())
    }

    /// Inverse of [`CutAssignment::from_bits`]; `None` beyond 64 vertices.
    pub fn to_bits(&self) -> Option<u64> {
        if self.0.len() > 64 {
            return None;
        }
        Some(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &s)| s)
                .fold(0u64, |acc, (i, _)| acc | (1 << i)),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn side(&self, vertex: usize) -> bool {
        self.0[vertex]
    }

    pub fn sides(&self) -> &[bool] {
        &self.0
    }

    pub fn into_sides(self) -> Vec<bool> {
        self.0
    }

    /// The same cut with both shores swapped.
    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|s| !s).collect())
    }
}

/// Total weight of the edges crossing the cut.
pub fn cut_value(graph: &WeightedGraph, assignment: &CutAssignment) -> Result<f64, GraphError> {
    if assignment.len() != graph.vertex_count() {
        return Err(GraphError::LengthMismatch {
            expected: graph.vertex_count(),
            found: assignment.len(),
        });
    }
    let sides = assignment.sides();
    Ok(graph
        .edges()
        .iter()
        .filter(|e| sides[e.u] != sides[e.v])
        // Folding from +0.0 keeps the empty cut from printing as -0.
        .fold(0.0, |acc, e| acc + e.weight))
}

/// Complete graph on the same vertices; pairs without an edge get weight 0.
pub fn dense_closure(graph: &WeightedGraph) -> WeightedGraph {
    let n = graph.vertex_count();
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut existing = graph.edges().iter().peekable();
    for u in 0..n {
        for v in (u + 1)..n {
            let weight = match existing.peek() {
                Some(e) if e.u == u && e.v == v => {
                    let w = e.weight;
                    existing.next();
                    w
                }
                _ => 0.0,
            };
            edges.push(Edge { u, v, weight });
        }
    }
    WeightedGraph {
        vertex_count: n,
        edges,
    }
}

/// Row-major numbering of the unordered vertex pairs `u < v` of `K_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairIndex {
    n: usize,
}

impl PairIndex {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of unordered pairs, `n(n-1)/2`.
    pub fn len(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of the pair `{u, v}`; order of the arguments does not matter.
    pub fn index(&self, u: usize, v: usize) -> usize {
        debug_assert!(u != v && u < self.n && v < self.n);
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        u * self.n - u * (u + 1) / 2 + (v - u - 1)
    }

    /// All pairs `(u, v)` with `u < v`, in index order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |u| ((u + 1)..n).map(move |v| (u, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    #[test]
    fn construction_canonicalizes_and_merges() {
        let g = WeightedGraph::new(3, [(2, 0, 1.5), (0, 2, 2.0), (1, 0, -1.0)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges()[0], Edge { u: 0, v: 1, weight: -1.0 });
        assert_eq!(g.edges()[1], Edge { u: 0, v: 2, weight: 3.5 });
        assert_eq!(g.weight(2, 0), Some(3.5));
        assert_eq!(g.weight(1, 2), None);
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(
            WeightedGraph::new(2, [(0, 2, 1.0)]),
            Err(GraphError::VertexOutOfRange {
                vertex: 2,
                vertex_count: 2
            })
        );
        assert_eq!(
            WeightedGraph::new(2, [(1, 1, 1.0)]),
            Err(GraphError::SelfLoop { vertex: 1 })
        );
        assert!(matches!(
            WeightedGraph::new(2, [(0, 1, f64::NAN)]),
            Err(GraphError::NonFiniteWeight { .. })
        ));
    }

    #[test]
    fn cut_value_examples() {
        let k2 = WeightedGraph::new(2, [(0, 1, 5.0)]).unwrap();
        let w = CutAssignment::from_sides(vec![true, false]);
        assert_eq!(cut_value(&k2, &w).unwrap(), 5.0);
        assert_eq!(cut_value(&k2, &CutAssignment::all_false(2)).unwrap(), 0.0);

        let t = triangle();
        let one = CutAssignment::from_sides(vec![false, true, false]);
        assert_eq!(cut_value(&t, &one).unwrap(), 2.0);
        assert_eq!(cut_value(&t, &CutAssignment::all_false(3)).unwrap(), 0.0);
    }

    #[test]
    fn cut_value_rejects_wrong_length() {
        let t = triangle();
        assert_eq!(
            cut_value(&t, &CutAssignment::all_false(2)),
            Err(GraphError::LengthMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn bits_round_trip_and_bit_evaluation() {
        let t = triangle();
        for bits in 0..8u64 {
            let a = CutAssignment::from_bits(bits, 3);
            assert_eq!(a.to_bits(), Some(bits));
            assert_eq!(t.cut_value_bits(bits), cut_value(&t, &a).unwrap());
        }
    }

    #[test]
    fn dense_closure_examples() {
        let k2 = WeightedGraph::new(2, [(0, 1, 5.0)]).unwrap();
        assert_eq!(dense_closure(&k2), k2);

        let isolated = dense_closure(&WeightedGraph::empty(3));
        assert_eq!(isolated.edge_count(), 3);
        assert!(isolated.edges().iter().all(|e| e.weight == 0.0));

        let path = WeightedGraph::new(3, [(0, 1, 2.0), (1, 2, -1.0)]).unwrap();
        let closed = dense_closure(&path);
        assert_eq!(closed.edge_count(), 3);
        assert_eq!(closed.weight(0, 2), Some(0.0));
        assert_eq!(closed.weight(0, 1), Some(2.0));
        assert_eq!(closed.weight(1, 2), Some(-1.0));
    }

    #[test]
    fn pair_index_is_a_bijection() {
        for n in 0..7 {
            let idx = PairIndex::new(n);
            let pairs: Vec<_> = idx.pairs().collect();
            assert_eq!(pairs.len(), idx.len());
            for (i, &(u, v)) in pairs.iter().enumerate() {
                assert_eq!(idx.index(u, v), i);
                assert_eq!(idx.index(v, u), i);
            }
        }
    }
}
