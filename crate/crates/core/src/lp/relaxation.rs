//! Triangle (cycle) relaxation of MaxCut on the complete graph.
//!
//! Every vertex pair of the dense closure gets a variable `x_uv ∈ [0, 1]`
//! (1 = the pair is separated). Violated triangle inequalities are found by
//! full enumeration and appended to the LP until none remain.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{lp_solve, LpError, LpProblem, LpRow};
use crate::graph::{PairIndex, WeightedGraph};

/// Most-violated triangle inequalities added per separation round.
pub const MAX_CUTS_PER_ROUND: usize = 500;

/// Which edges of the triangle form the odd subset `Q` of the inequality
/// `Σ_{e∈Q} x_e - Σ_{e∉Q} x_e ≤ |Q| - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriangleVariant {
    /// `x_tu - x_uv - x_vt ≤ 0`
    OddTu,
    /// `-x_tu + x_uv - x_vt ≤ 0`
    OddUv,
    /// `-x_tu - x_uv + x_vt ≤ 0`
    OddVt,
    /// `x_tu + x_uv + x_vt ≤ 2`
    OddAll,
}

impl TriangleVariant {
    pub const ALL: [Self; 4] = [Self::OddTu, Self::OddUv, Self::OddVt, Self::OddAll];

    /// Position 1–4 in the conventional listing of the four forms.
    pub fn number(self) -> u8 {
        match self {
            Self::OddTu => 1,
            Self::OddUv => 2,
            Self::OddVt => 3,
            Self::OddAll => 4,
        }
    }

    /// Signs on `(x_tu, x_uv, x_vt)` and the right-hand side.
    fn form(self) -> ([f64; 3], f64) {
        match self {
            Self::OddTu => ([1.0, -1.0, -1.0], 0.0),
            Self::OddUv => ([-1.0, 1.0, -1.0], 0.0),
            Self::OddVt => ([-1.0, -1.0, 1.0], 0.0),
            Self::OddAll => ([1.0, 1.0, 1.0], 2.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangleConstraint {
    pub t: usize,
    pub u: usize,
    pub v: usize,
    pub variant: TriangleVariant,
}

impl TriangleConstraint {
    /// # Panics
    /// Unless `t < u < v`.
    pub fn new(t: usize, u: usize, v: usize, variant: TriangleVariant) -> Self {
        assert!(t < u && u < v, "triangle vertices must be strictly increasing");
        Self { t, u, v, variant }
    }

    pub fn row(&self, index: &PairIndex) -> LpRow {
        let (signs, rhs) = self.variant.form();
        let vars = self.variables(index);
        LpRow::new(
            vars.iter().copied().zip(signs).collect(),
            rhs,
        )
    }

    /// `lhs - rhs`; positive means violated.
    pub fn violation(&self, x: &[f64], index: &PairIndex) -> f64 {
        let (signs, rhs) = self.variant.form();
        let vars = self.variables(index);
        signs.iter().zip(vars).map(|(s, j)| s * x[j]).sum::<f64>() - rhs
    }

    fn variables(&self, index: &PairIndex) -> [usize; 3] {
        [
            index.index(self.t, self.u),
            index.index(self.u, self.v),
            index.index(self.t, self.v),
        ]
    }
}

/// Optimal point of the triangle relaxation plus separation statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution {
    index: PairIndex,
    /// `x_uv` in [`PairIndex`] order.
    pub x: Vec<f64>,
    /// LP optimum; an upper bound on the maximum cut.
    pub objective_value: f64,
    /// Number of LP solves (separation rounds).
    pub iterations: usize,
    pub constraints_added: usize,
    /// LP objective after each round; non-increasing.
    pub objective_history: Vec<f64>,
    /// The triangle inequalities in the final LP.
    pub constraints: Vec<TriangleConstraint>,
}

impl FractionalSolution {
    /// Wraps a pair vector without solving anything; `x` must follow `index` order.
    pub fn from_values(index: PairIndex, x: Vec<f64>, objective_value: f64) -> Self {
        assert_eq!(x.len(), index.len());
        Self {
            index,
            x,
            objective_value,
            iterations: 0,
            constraints_added: 0,
            objective_history: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn pair_index(&self) -> PairIndex {
        self.index
    }

    pub fn vertex_count(&self) -> usize {
        self.index.vertex_count()
    }

    pub fn value(&self, u: usize, v: usize) -> f64 {
        self.x[self.index.index(u, v)]
    }

    /// True when every pair value is within `tol` of 0 or 1.
    pub fn is_integral(&self, tol: f64) -> bool {
        self.x.iter().all(|&v| v.min(1.0 - v).abs() <= tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationOptions {
    /// Minimum violation for an inequality to be separated.
    pub tol: f64,
    pub cuts_per_round: usize,
    pub max_rounds: usize,
}

impl Default for RelaxationOptions {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            cuts_per_round: MAX_CUTS_PER_ROUND,
            max_rounds: 1_000,
        }
    }
}

/// Violated triangle inequalities, most violated first, at most
/// [`MAX_CUTS_PER_ROUND`] of them.
pub fn separate_triangles(x: &[f64], index: &PairIndex, tol: f64) -> Vec<TriangleConstraint> {
    separate_triangles_capped(x, index, tol, MAX_CUTS_PER_ROUND)
}

/// Like [`separate_triangles`] with an explicit cap. Equal violations keep
/// enumeration order (`t < u < v` lexicographic, then variant).
pub fn separate_triangles_capped(
    x: &[f64],
    index: &PairIndex,
    tol: f64,
    cap: usize,
) -> Vec<TriangleConstraint> {
    assert_eq!(x.len(), index.len(), "pair vector does not match vertex count");
    let n = index.vertex_count();
    let mut violated: Vec<(f64, TriangleConstraint)> = Vec::new();
    for t in 0..n {
        for u in (t + 1)..n {
            let tu = x[index.index(t, u)];
            for v in (u + 1)..n {
                let uv = x[index.index(u, v)];
                let vt = x[index.index(t, v)];
                let amounts = [tu - uv - vt, uv - tu - vt, vt - tu - uv, tu + uv + vt - 2.0];
                for (variant, amount) in TriangleVariant::ALL.into_iter().zip(amounts) {
                    if amount > tol {
                        violated.push((amount, TriangleConstraint { t, u, v, variant }));
                    }
                }
            }
        }
    }
    violated.sort_by(|a, b| b.0.total_cmp(&a.0));
    violated.truncate(cap);
    violated.into_iter().map(|(_, c)| c).collect()
}

/// [`solve_cycle_relaxation_with`] using default options and separation tolerance `tol`.
pub fn solve_cycle_relaxation(
    graph: &WeightedGraph,
    tol: f64,
) -> Result<FractionalSolution, LpError> {
    solve_cycle_relaxation_with(
        graph,
        RelaxationOptions {
            tol,
            ..RelaxationOptions::default()
        },
    )
}

/// Cutting-plane loop over the dense closure of `graph`.
///
/// Pairs without an edge enter the objective with weight zero, so any graph
/// may be passed; the LP always has one variable per vertex pair.
pub fn solve_cycle_relaxation_with(
    graph: &WeightedGraph,
    options: RelaxationOptions,
) -> Result<FractionalSolution, LpError> {
    let index = PairIndex::new(graph.vertex_count());
    let mut objective = alloc::vec![0.0; index.len()];
    for e in graph.edges() {
        objective[index.index(e.u, e.v)] += e.weight;
    }

    let mut problem = LpProblem::new(objective, Vec::new());
    let mut active: BTreeSet<TriangleConstraint> = BTreeSet::new();
    let mut constraints = Vec::new();
    let mut history = Vec::new();

    for round in 1..=options.max_rounds {
        let solution = lp_solve(&problem)?;
        history.push(solution.value);
        let fresh: Vec<TriangleConstraint> =
            separate_triangles_capped(&solution.x, &index, options.tol, options.cuts_per_round)
                .into_iter()
                .filter(|c| !active.contains(c))
                .collect();
        if fresh.is_empty() {
            return Ok(FractionalSolution {
                index,
                x: solution.x,
                objective_value: solution.value,
                iterations: round,
                constraints_added: constraints.len(),
                objective_history: history,
                constraints,
            });
        }
        for c in fresh {
            problem.push(c.row(&index));
            active.insert(c);
            constraints.push(c);
        }
    }
    Err(LpError::SeparationLimit {
        rounds: options.max_rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::brute_force;
    use crate::graph::dense_closure;
    use alloc::vec;

    #[test]
    fn separation_examples() {
        let k3 = PairIndex::new(3);
        assert!(separate_triangles(&[0.0; 3], &k3, 1e-6).is_empty());
        assert!(separate_triangles(&[0.5; 3], &k3, 1e-6).is_empty());
        let cuts = separate_triangles(&[1.0; 3], &k3, 1e-6);
        assert_eq!(cuts, vec![TriangleConstraint::new(0, 1, 2, TriangleVariant::OddAll)]);
        assert!((cuts[0].violation(&[1.0; 3], &k3) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn separation_orders_and_caps() {
        // K4 with pair (0,1) separated and everything else together violates
        // OddTu-type rows on both triangles through (0,1).
        let k4 = PairIndex::new(4);
        let mut x = vec![0.0; k4.len()];
        x[k4.index(0, 1)] = 1.0;
        x[k4.index(2, 3)] = 0.5;
        let all = separate_triangles_capped(&x, &k4, 1e-6, usize::MAX);
        for w in all.windows(2) {
            assert!(w[0].violation(&x, &k4) >= w[1].violation(&x, &k4));
        }
        assert!(all.iter().all(|c| c.violation(&x, &k4) > 1e-6));
        assert_eq!(separate_triangles_capped(&x, &k4, 1e-6, 1).len(), 1);
    }

    #[test]
    fn variant_rows_match_forms() {
        let k3 = PairIndex::new(3);
        let x = [0.2, 0.7, 0.4]; // x01, x02, x12
        for variant in TriangleVariant::ALL {
            let c = TriangleConstraint::new(0, 1, 2, variant);
            let row = c.row(&k3);
            assert!((row.activity(&x) - row.rhs - c.violation(&x, &k3)).abs() < 1e-15);
        }
    }

    #[test]
    fn k2_relaxation() {
        let g = WeightedGraph::new(2, [(0, 1, 1.0)]).unwrap();
        let s = solve_cycle_relaxation(&g, 1e-6).unwrap();
        assert_eq!(s.x, vec![1.0]);
        assert_eq!(s.objective_value, 1.0);
    }

    #[test]
    fn k5_all_ones_gap() {
        let edges = (0..5).flat_map(|u| ((u + 1)..5).map(move |v| (u, v, 1.0)));
        let g = WeightedGraph::new(5, edges).unwrap();
        let s = solve_cycle_relaxation(&g, 1e-6).unwrap();
        assert!((s.objective_value - 20.0 / 3.0).abs() < 1e-6);
        assert_eq!(brute_force(&g).unwrap().max_value, 6.0);
    }

    #[test]
    fn history_is_non_increasing_and_point_feasible() {
        let g = WeightedGraph::new(
            6,
            [
                (0, 1, 1.0),
                (1, 2, -1.0),
                (0, 3, 1.0),
                (1, 4, 1.0),
                (2, 5, 1.0),
                (3, 4, 1.0),
                (4, 5, -1.0),
                (0, 5, 2.0),
                (2, 3, 1.5),
            ],
        )
        .unwrap();
        let s = solve_cycle_relaxation(&dense_closure(&g), 1e-6).unwrap();
        for w in s.objective_history.windows(2) {
            assert!(w[1] <= w[0] + 1e-9);
        }
        assert!(s.x.iter().all(|&v| (0.0..=1.0).contains(&v)));
        let index = s.pair_index();
        assert!(separate_triangles(&s.x, &index, 1e-6).is_empty());
        assert!(s.objective_value >= brute_force(&g).unwrap().max_value - 1e-6);
    }
}
