//! Seeded generators for the benchmark instance families.

use std::collections::BTreeSet;

use cutshrink_core::WeightedGraph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// How edge weights are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// Every weight is 1.
    Unit,
    /// `+1` or `-1` with equal probability.
    PlusMinusOne,
    /// Standard normal.
    Normal,
}

impl WeightKind {
    pub fn draw<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            Self::Unit => 1.0,
            Self::PlusMinusOne => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            Self::Normal => StandardNormal.sample(rng),
        }
    }
}

/// Attaches weights to a fixed topology.
pub fn weighted<R: Rng + ?Sized>(
    n: usize,
    pairs: &[(usize, usize)],
    kind: WeightKind,
    rng: &mut R,
) -> WeightedGraph {
    WeightedGraph::new(n, pairs.iter().map(|&(u, v)| (u, v, kind.draw(rng))))
        .expect("generated pairs are valid")
}

pub fn ring_pairs(n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

/// Vertex 0 joined to every other vertex.
pub fn star_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|v| (0, v)).collect()
}

pub fn complete_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect()
}

/// A ring with one chord between vertex 0 and vertex `n / 2`.
pub fn ring_with_chord_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = ring_pairs(n);
    if n >= 4 {
        pairs.push((0, n / 2));
    }
    pairs
}

/// `rows × cols` grid; vertex `(r, c)` has id `r * cols + c`.
pub fn grid_pairs(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                pairs.push((v, v + 1));
            }
            if r + 1 < rows {
                pairs.push((v, v + cols));
            }
        }
    }
    pairs
}

/// Periodic `rows × cols` grid.
pub fn toroidal_grid_pairs(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            let right = r * cols + (c + 1) % cols;
            let down = ((r + 1) % rows) * cols + c;
            for w in [right, down] {
                if w != v {
                    pairs.insert((v.min(w), v.max(w)));
                }
            }
        }
    }
    pairs.into_iter().collect()
}

/// Complete bipartite graph with parts `0..a` and `a..a+b`.
pub fn complete_bipartite_pairs(a: usize, b: usize) -> Vec<(usize, usize)> {
    (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect()
}

/// Uniform-ish simple `d`-regular graph by the configuration model with restarts.
///
/// Panics when `n * d` is odd or `d >= n`.
pub fn random_regular_pairs<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Vec<(usize, usize)> {
    assert!(d < n && (n * d).is_multiple_of(2), "no simple {d}-regular graph on {n} vertices");
    'attempt: loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        stubs.shuffle(rng);
        let mut pairs = BTreeSet::new();
        // Pair stubs greedily, swapping in a random later stub when the
        // natural partner would create a loop or a multi-edge.
        let mut i = 0;
        while i < stubs.len() {
            let u = stubs[i];
            let mut found = false;
            for _ in 0..(4 * stubs.len()) {
                let j = rng.random_range(i + 1..stubs.len());
                let v = stubs[j];
                if v != u && !pairs.contains(&(u.min(v), u.max(v))) {
                    stubs.swap(i + 1, j);
                    pairs.insert((u.min(v), u.max(v)));
                    found = true;
                    break;
                }
            }
            if !found {
                continue 'attempt;
            }
            i += 2;
        }
        return pairs.into_iter().collect();
    }
}

/// A ring plus random chords that never close a triangle.
///
/// Candidate pairs are visited once in random order and kept when they have no
/// common neighbour with the current graph. `extra = None` keeps going until no
/// pair can be added, giving a maximal triangle-free graph; `Some(k)` stops
/// after `k` chords.
pub fn triangle_free_ring_pairs<R: Rng + ?Sized>(
    n: usize,
    extra: Option<usize>,
    rng: &mut R,
) -> Vec<(usize, usize)> {
    let mut adjacency = vec![BTreeSet::new(); n];
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (u, v) in ring_pairs(n) {
        adjacency[u].insert(v);
        adjacency[v].insert(u);
        pairs.insert((u.min(v), u.max(v)));
    }
    let mut candidates = complete_pairs(n);
    candidates.shuffle(rng);
    let limit = extra.unwrap_or(usize::MAX);
    let mut added = 0;
    for (u, v) in candidates {
        if added == limit {
            break;
        }
        if adjacency[u].contains(&v) || adjacency[u].intersection(&adjacency[v]).next().is_some() {
            continue;
        }
        adjacency[u].insert(v);
        adjacency[v].insert(u);
        pairs.insert((u, v));
        added += 1;
    }
    pairs.into_iter().collect()
}

/// `G(n, p)`.
pub fn erdos_renyi_pairs<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Vec<(usize, usize)> {
    complete_pairs(n)
        .into_iter()
        .filter(|_| rng.random::<f64>() < p)
        .collect()
}
