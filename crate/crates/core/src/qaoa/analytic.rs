//! Closed-form depth-1 expectation, summed edge by edge.
//!
//! For an edge `uv` with weight `w`, let `N_v(u)` be the neighbours of `u`
//! other than `v` and `Λ` the common neighbours of `u` and `v`. Then
//!
//! ```text
//! f_uv = w [ 1/2
//!          + 1/4 sin 4β sin γw (Π_{s∈N_v(u)} cos γw_us + Π_{t∈N_u(v)} cos γw_vt)
//!          - 1/2 sin² 2β Σ_{N⊆Λ, |N| odd} Π_{s∈N_v(u)\N} cos γw_us
//!                                        Π_{t∈N_u(v)\N} cos γw_vt
//!                                        Π_{r∈N} sin γw_ur sin γw_vr ]
//! ```
//!
//! Zero-weight edges are dropped up front: they contribute nothing to the sum
//! and only ever multiply a term by `cos 0 = 1` or `sin 0 = 0`.

use alloc::vec::Vec;

use super::{QaoaError, QaoaParams};
use crate::graph::WeightedGraph;

/// Default cap on `|Λ(u, v)|`; the odd-subset sum costs `2^|Λ|` per edge.
pub const MAX_COMMON_NEIGHBORS: usize = 20;

/// [`expectation_analytic_capped`] with [`MAX_COMMON_NEIGHBORS`].
pub fn expectation_analytic(graph: &WeightedGraph, params: QaoaParams) -> Result<f64, QaoaError> {
    expectation_analytic_capped(graph, params, MAX_COMMON_NEIGHBORS)
}

pub fn expectation_analytic_capped(
    graph: &WeightedGraph,
    params: QaoaParams,
    cap: usize,
) -> Result<f64, QaoaError> {
    let sparse = graph.without_zero_edges();
    let adjacency = sparse.adjacency();
    let QaoaParams { gamma, beta } = params;
    let sin4b = libm::sin(4.0 * beta);
    let sin2b = libm::sin(2.0 * beta);
    let sin2b_sq = sin2b * sin2b;

    let mut total = 0.0;
    for e in sparse.edges() {
        let (u, v, w) = (e.u, e.v, e.weight);
        let others_u: Vec<(usize, f64)> =
            adjacency[u].iter().copied().filter(|&(s, _)| s != v).collect();
        let others_v: Vec<(usize, f64)> =
            adjacency[v].iter().copied().filter(|&(t, _)| t != u).collect();

        let cos_u = |x: f64| libm::cos(gamma * x);
        let prod_u: f64 = others_u.iter().map(|&(_, x)| cos_u(x)).product();
        let prod_v: f64 = others_v.iter().map(|&(_, x)| cos_u(x)).product();

        // Split both neighbour lists into the common part Λ and the rest.
        let mut rest = 1.0;
        let mut common: Vec<(f64, f64)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < others_u.len() || j < others_v.len() {
            match (others_u.get(i), others_v.get(j)) {
                (Some(&(s, ws)), Some(&(t, wt))) if s == t => {
                    common.push((ws, wt));
                    i += 1;
                    j += 1;
                }
                (Some(&(s, ws)), Some(&(t, _))) if s < t => {
                    rest *= cos_u(ws);
                    i += 1;
                }
                (Some(&(_, ws)), None) => {
                    rest *= cos_u(ws);
                    i += 1;
                }
                (_, Some(&(_, wt))) => {
                    rest *= cos_u(wt);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        if common.len() > cap {
            return Err(QaoaError::CommonNeighborhoodTooLarge {
                u,
                v,
                size: common.len(),
                cap,
            });
        }

        let odd_sum = if common.is_empty() || sin2b_sq == 0.0 {
            0.0
        } else {
            rest * odd_subset_sum(&common, gamma)
        };

        total += w
            * (0.5 + 0.25 * sin4b * libm::sin(gamma * w) * (prod_u + prod_v)
                - 0.5 * sin2b_sq * odd_sum);
    }
    Ok(total)
}

/// `Σ_{N ⊆ Λ, |N| odd} Π_{r∉N} cos γw_ur cos γw_vr Π_{r∈N} sin γw_ur sin γw_vr`,
/// enumerated subset by subset.
fn odd_subset_sum(common: &[(f64, f64)], gamma: f64) -> f64 {
    let factors: Vec<(f64, f64)> = common
        .iter()
        .map(|&(wu, wv)| {
            let (su, cu) = (libm::sin(gamma * wu), libm::cos(gamma * wu));
            let (sv, cv) = (libm::sin(gamma * wv), libm::cos(gamma * wv));
            (cu * cv, su * sv)
        })
        .collect();
    let mut sum = 0.0;
    for mask in 1u32..(1u32 << factors.len()) {
        if mask.count_ones() % 2 == 0 {
            continue;
        }
        sum += factors
            .iter()
            .enumerate()
            .map(|(r, &(outside, inside))| if (mask >> r) & 1 == 1 { inside } else { outside })
            .product::<f64>();
    }
    sum
}
