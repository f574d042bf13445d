//! Correlation-driven vertex shrinking and solution reconstruction.
//!
//! Contracting `u` into `v` with sign `σ` forces the two vertices onto the
//! same shore (`σ = +1`) or opposite shores (`σ = -1`). For every other
//! vertex `t`, the edge `ut` is folded into `vt` as `w_vt + σ w_ut`. With
//! `σ = -1` the folded edges and `uv` itself contribute a constant that is
//! accumulated in the state's offset, so that
//! `cut(original, reconstruct(a)) = cut(reduced, a) + offset` for every
//! reduced assignment `a`.

mod union_find;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{CutAssignment, PairIndex, WeightedGraph};
use crate::lp::FractionalSolution;

pub use union_find::SignedUnionFind;

#[derive(Debug, Clone, PartialEq)]
pub enum ShrinkError {
    /// A vertex id is not below the original vertex count.
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    /// The vertex was already absorbed into another super-vertex.
    VertexRemoved { vertex: usize },
    /// Both endpoints of a contraction are the same vertex.
    SameVertex { vertex: usize },
    /// The target size is not in `1..=vertex_count`.
    TargetOutOfRange { target: usize, vertex_count: usize },
    /// Every remaining pair is internal to a super-vertex before the target is reached.
    Exhausted { reached: usize, target: usize },
    /// Correlations were computed for a different vertex count.
    CorrelationMismatch { expected: usize, found: usize },
    /// A reduced assignment does not match the reduced vertex count.
    AssignmentLength { expected: usize, found: usize },
}

impl fmt::Display for ShrinkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::VertexOutOfRange {
                vertex,
                vertex_count,
            } => write!(f, "vertex {vertex} out of range for {vertex_count} vertices"),
            Self::VertexRemoved { vertex } => write!(f, "vertex {vertex} was already shrunk"),
            Self::SameVertex { vertex } => write!(f, "cannot shrink vertex {vertex} into itself"),
            Self::TargetOutOfRange {
                target,
                vertex_count,
            } => write!(f, "target size {target} not in 1..={vertex_count}"),
            Self::Exhausted { reached, target } => write!(
                f,
                "ran out of contractible pairs at {reached} vertices (target {target})"
            ),
            Self::CorrelationMismatch { expected, found } => write!(
                f,
                "correlations cover {found} vertices, graph has {expected}"
            ),
            Self::AssignmentLength { expected, found } => write!(
                f,
                "reduced assignment has {found} entries, reduced graph has {expected} vertices"
            ),
        }
    }
}

impl core::error::Error for ShrinkError {}

/// The contraction sign `σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `σ = +1`: both vertices end up on the same shore.
    Same,
    /// `σ = -1`: the vertices end up on opposite shores.
    Opposite,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Self::Same => 1.0,
            Self::Opposite => -1.0,
        }
    }

    pub fn is_opposite(self) -> bool {
        self == Self::Opposite
    }

    fn from_opposite(opposite: bool) -> Self {
        if opposite {
            Self::Opposite
        } else {
            Self::Same
        }
    }
}

/// `sign(b)`, with `b = 0` mapped to [`Sign::Same`].
pub fn sigma_of(b: f64) -> Sign {
    if b < 0.0 {
        Sign::Opposite
    } else {
        Sign::Same
    }
}

/// Correlations `b_uv ∈ [-1, 1]` for every vertex pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSet {
    index: PairIndex,
    values: Vec<f64>,
}

impl CorrelationSet {
    /// All-zero correlations: every contraction uses `σ = +1` in pair order.
    pub fn zeros(n: usize) -> Self {
        let index = PairIndex::new(n);
        Self {
            index,
            values: vec![0.0; index.len()],
        }
    }

    /// Wraps pair values in [`PairIndex`] order; values are clamped to `[-1, 1]`.
    pub fn from_values(n: usize, values: Vec<f64>) -> Self {
        let index = PairIndex::new(n);
        assert_eq!(values.len(), index.len(), "one correlation per vertex pair");
        Self {
            index,
            values: values.into_iter().map(|b| b.clamp(-1.0, 1.0)).collect(),
        }
    }

    /// `+1` for pairs on the same shore of `cut`, `-1` for separated pairs.
    pub fn from_cut(cut: &CutAssignment) -> Self {
        let index = PairIndex::new(cut.len());
        let values = index
            .pairs()
            .map(|(u, v)| if cut.side(u) == cut.side(v) { 1.0 } else { -1.0 })
            .collect();
        Self { index, values }
    }

    pub fn vertex_count(&self) -> usize {
        self.index.vertex_count()
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.values[self.index.index(u, v)]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Pairs in contraction order: descending `|b|`, ties by `(u, v)`.
    pub fn contraction_order(&self) -> Vec<(usize, usize, f64)> {
        let mut order: Vec<(usize, usize, f64)> = self
            .index
            .pairs()
            .zip(&self.values)
            .map(|((u, v), &b)| (u, v, b))
            .collect();
        // Stable: pairs are generated in lexicographic order.
        order.sort_by(|a, b| b.2.abs().total_cmp(&a.2.abs()));
        order
    }
}

/// `b_uv = 1 - 2 x_uv`.
pub fn correlations_from_relaxation(solution: &FractionalSolution) -> CorrelationSet {
    CorrelationSet::from_values(
        solution.vertex_count(),
        solution.x.iter().map(|&x| 1.0 - 2.0 * x).collect(),
    )
}

/// One contraction, in original vertex ids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShrinkRecord {
    pub kept: usize,
    pub removed: usize,
    pub sigma: Sign,
    /// `w_uv` between the two super-vertices just before contraction.
    pub contracted_weight: f64,
    /// Constant moved into the offset by this contraction (zero for `σ = +1`).
    pub offset_delta: f64,
}

/// An instance part-way through shrinking.
///
/// The reduced instance lives in a dense weight matrix over original ids;
/// only super-vertex representatives (union-find roots) remain active.
#[derive(Debug, Clone, PartialEq)]
pub struct ShrinkState {
    original: WeightedGraph,
    weights: Vec<f64>,
    active: Vec<bool>,
    union_find: SignedUnionFind,
    records: Vec<ShrinkRecord>,
    offset: f64,
    skipped: usize,
}

impl ShrinkState {
    pub fn new(original: &WeightedGraph) -> Self {
        let n = original.vertex_count();
        Self {
            weights: original.weight_matrix(),
            active: vec![true; n],
            union_find: SignedUnionFind::new(n),
            records: Vec::new(),
            offset: 0.0,
            skipped: 0,
            original: original.clone(),
        }
    }

    pub fn original(&self) -> &WeightedGraph {
        &self.original
    }

    pub fn records(&self) -> &[ShrinkRecord] {
        &self.records
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Pairs passed over by [`shrink_to_target`] because they were already joined.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn reduced_vertex_count(&self) -> usize {
        self.original.vertex_count() - self.records.len()
    }

    /// Original ids of the super-vertex representatives, ascending.
    /// Reduced vertex `i` is `active_vertices()[i]`.
    pub fn active_vertices(&self) -> Vec<usize> {
        (0..self.active.len()).filter(|&i| self.active[i]).collect()
    }

    pub fn is_active(&self, vertex: usize) -> bool {
        self.active.get(vertex).copied().unwrap_or(false)
    }

    /// Current weight between two active representatives.
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.weights[u * self.active.len() + v]
    }

    /// Representative of `vertex` and its shore relative to the representative.
    pub fn super_vertex_of(&self, vertex: usize) -> (usize, Sign) {
        let (root, opposite) = self.union_find.root_of(vertex);
        (root, Sign::from_opposite(opposite))
    }

    /// The reduced instance on `0..reduced_vertex_count()`, zero-weight pairs dropped.
    pub fn reduced_graph(&self) -> WeightedGraph {
        let active = self.active_vertices();
        let mut edges = Vec::new();
        for (i, &a) in active.iter().enumerate() {
            for (j, &b) in active.iter().enumerate().skip(i + 1) {
                let w = self.weight(a, b);
                if w != 0.0 {
                    edges.push((i, j, w));
                }
            }
        }
        WeightedGraph::new(active.len(), edges).expect("reduced pairs are canonical")
    }

    /// Contracts active vertex `removed` into active vertex `kept`.
    pub fn shrink(
        &mut self,
        removed: usize,
        kept: usize,
        sigma: Sign,
    ) -> Result<&ShrinkRecord, ShrinkError> {
        let n = self.active.len();
        for vertex in [removed, kept] {
            if vertex >= n {
                return Err(ShrinkError::VertexOutOfRange {
                    vertex,
                    vertex_count: n,
                });
            }
            if !self.active[vertex] {
                return Err(ShrinkError::VertexRemoved { vertex });
            }
        }
        if removed == kept {
            return Err(ShrinkError::SameVertex { vertex: kept });
        }

        let s = sigma.value();
        let contracted_weight = self.weight(removed, kept);
        let mut folded = 0.0;
        for t in 0..n {
            if t == removed || t == kept || !self.active[t] {
                continue;
            }
            let w_ut = self.weights[removed * n + t];
            if w_ut == 0.0 {
                continue;
            }
            folded += w_ut;
            let w_vt = self.weights[kept * n + t] + s * w_ut;
            self.weights[kept * n + t] = w_vt;
            self.weights[t * n + kept] = w_vt;
        }
        for t in 0..n {
            self.weights[removed * n + t] = 0.0;
            self.weights[t * n + removed] = 0.0;
        }

        // With σ = -1 every edge at `removed` flips: uv is always cut, and ut is
        // cut exactly when vt is not, i.e. w_ut·[ut cut] = w_ut - w_ut·[vt cut].
        let offset_delta = if sigma.is_opposite() {
            contracted_weight + folded
        } else {
            0.0
        };
        self.offset += offset_delta;
        self.active[removed] = false;
        self.union_find.attach(removed, kept, sigma.is_opposite());
        self.records.push(ShrinkRecord {
            kept,
            removed,
            sigma,
            contracted_weight,
            offset_delta,
        });
        Ok(self.records.last().expect("just pushed"))
    }
}

/// Value-passing form of [`ShrinkState::shrink`]: removes `u`, keeps `v`.
pub fn shrink_once(
    mut state: ShrinkState,
    u: usize,
    v: usize,
    sigma: Sign,
) -> Result<ShrinkState, ShrinkError> {
    state.shrink(u, v, sigma)?;
    Ok(state)
}

/// Shrinks `graph` to `target` vertices following `correlations`.
///
/// Pairs are visited in [`CorrelationSet::contraction_order`]. Each pair is
/// projected onto its current super-vertices; pairs already inside one
/// super-vertex are skipped, so the fixed pairs always form a forest. The
/// larger representative id is removed, the smaller kept.
pub fn shrink_to_target(
    graph: &WeightedGraph,
    correlations: &CorrelationSet,
    target: usize,
) -> Result<ShrinkState, ShrinkError> {
    let n = graph.vertex_count();
    if target == 0 || target > n {
        return Err(ShrinkError::TargetOutOfRange {
            target,
            vertex_count: n,
        });
    }
    if correlations.vertex_count() != n {
        return Err(ShrinkError::CorrelationMismatch {
            expected: n,
            found: correlations.vertex_count(),
        });
    }
    let mut state = ShrinkState::new(graph);
    for (u, v, b) in correlations.contraction_order() {
        if state.reduced_vertex_count() == target {
            break;
        }
        let (ru, pu) = state.union_find.find(u);
        let (rv, pv) = state.union_find.find(v);
        if ru == rv {
            state.skipped += 1;
            continue;
        }
        // σ relates u and v; translate it to their representatives.
        let opposite = sigma_of(b).is_opposite() ^ pu ^ pv;
        let (kept, removed) = if ru < rv { (ru, rv) } else { (rv, ru) };
        state.shrink(removed, kept, Sign::from_opposite(opposite))?;
    }
    if state.reduced_vertex_count() != target {
        return Err(ShrinkError::Exhausted {
            reached: state.reduced_vertex_count(),
            target,
        });
    }
    Ok(state)
}

/// Expands a reduced assignment to every original vertex.
pub fn reconstruct(
    state: &ShrinkState,
    reduced: &CutAssignment,
) -> Result<CutAssignment, ShrinkError> {
    let k = state.reduced_vertex_count();
    if reduced.len() != k {
        return Err(ShrinkError::AssignmentLength {
            expected: k,
            found: reduced.len(),
        });
    }
    let n = state.original.vertex_count();
    let mut position = vec![usize::MAX; n];
    for (i, v) in state.active_vertices().into_iter().enumerate() {
        position[v] = i;
    }
    let sides = (0..n)
        .map(|vertex| {
            let (root, opposite) = state.union_find.root_of(vertex);
            reduced.side(position[root]) ^ opposite
        })
        .collect();
    Ok(CutAssignment::from_sides(sides))
}
