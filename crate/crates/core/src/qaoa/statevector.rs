use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{QaoaError, QaoaParams};
use crate::graph::{CutAssignment, WeightedGraph};

/// Largest graph simulated as a dense statevector.
pub const MAX_QUBITS: usize = 24;

/// Amplitudes over the `2^n` computational basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaState {
    qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl QaoaState {
    /// A basis state `|bits⟩`.
    pub fn basis(qubits: usize, bits: u64) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amplitudes[bits as usize] = Complex64::new(1.0, 0.0);
        Self { qubits, amplitudes }
    }

    /// The uniform superposition `|+⟩^n`.
    pub fn uniform(qubits: usize) -> Self {
        let dim = 1usize << qubits;
        let a = 1.0 / libm::sqrt(dim as f64);
        Self {
            qubits,
            amplitudes: vec![Complex64::new(a, 0.0); dim],
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `Σ_x |amp(x)|² values[x]`.
    pub fn expectation(&self, values: &[f64]) -> f64 {
        self.amplitudes
            .iter()
            .zip(values)
            .map(|(a, v)| a.norm_sqr() * v)
            .sum()
    }

    fn apply_phase(&mut self, cuts: &[f64], gamma: f64) {
        for (amp, &c) in self.amplitudes.iter_mut().zip(cuts) {
            let angle = -gamma * c;
            *amp *= Complex64::new(libm::cos(angle), libm::sin(angle));
        }
    }

    /// `e^{-iβX}` on every qubit, as in-place butterflies.
    fn apply_mixer(&mut self, beta: f64) {
        let c = libm::cos(beta);
        let s = libm::sin(beta);
        let minus_i_s = Complex64::new(0.0, -s);
        for q in 0..self.qubits {
            let stride = 1usize << q;
            for block in (0..self.amplitudes.len()).step_by(stride << 1) {
                for i in block..block + stride {
                    let a0 = self.amplitudes[i];
                    let a1 = self.amplitudes[i + stride];
                    self.amplitudes[i] = a0 * c + a1 * minus_i_s;
                    self.amplitudes[i + stride] = a0 * minus_i_s + a1 * c;
                }
            }
        }
    }
}

/// Cut value of every basis state.
///
/// `cut[x]` is derived from `cut[x & (x-1)]` by moving the lowest set vertex
/// across: each incident edge toggles between cut and uncut.
pub fn cut_table(graph: &WeightedGraph) -> Result<Vec<f64>, QaoaError> {
    let n = graph.vertex_count();
    if n > MAX_QUBITS {
        return Err(QaoaError::TooManyQubits {
            qubits: n,
            cap: MAX_QUBITS,
        });
    }
    let adjacency = graph.adjacency();
    let dim = 1usize << n;
    let mut table = vec![0.0; dim];
    for x in 1..dim {
        let rest = x & (x - 1);
        let vertex = x.trailing_zeros() as usize;
        let delta: f64 = adjacency[vertex]
            .iter()
            .map(|&(t, w)| if (rest >> t) & 1 == 0 { w } else { -w })
            .sum();
        table[x] = table[rest] + delta;
    }
    Ok(table)
}

fn simulate(graph: &WeightedGraph, params: QaoaParams) -> Result<(QaoaState, Vec<f64>), QaoaError> {
    let cuts = cut_table(graph)?;
    let mut state = QaoaState::uniform(graph.vertex_count());
    state.apply_phase(&cuts, params.gamma);
    state.apply_mixer(params.beta);
    Ok((state, cuts))
}

/// `e^{-iβ H_M} e^{-iγ H_C} |+⟩`.
pub fn qaoa_state(graph: &WeightedGraph, params: QaoaParams) -> Result<QaoaState, QaoaError> {
    simulate(graph, params).map(|(state, _)| state)
}

/// Exact `⟨ψ|H_C|ψ⟩` from the simulated amplitudes.
pub fn expectation_statevector(graph: &WeightedGraph, params: QaoaParams) -> Result<f64, QaoaError> {
    let (state, cuts) = simulate(graph, params)?;
    Ok(state.expectation(&cuts))
}

/// `samples` i.i.d. measurement outcomes as basis indices; reproducible per seed.
pub fn sample_bits(state: &QaoaState, samples: usize, seed: u64) -> Vec<u64> {
    let mut cumulative = Vec::with_capacity(state.amplitudes.len());
    let mut total = 0.0;
    for a in &state.amplitudes {
        total += a.norm_sqr();
        cumulative.push(total);
    }
    let last_supported = state
        .amplitudes
        .iter()
        .rposition(|a| a.norm_sqr() > 0.0)
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let u = rng.random::<f64>() * total;
            let i = cumulative.partition_point(|&c| c <= u);
            i.min(last_supported) as u64
        })
        .collect()
}

/// [`sample_bits`] decoded into cut assignments.
pub fn sample(state: &QaoaState, samples: usize, seed: u64) -> Vec<CutAssignment> {
    sample_bits(state, samples, seed)
        .into_iter()
        .map(|bits| CutAssignment::from_bits(bits, state.qubits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cut_value;
    use core::f64::consts::PI;

    fn k2() -> WeightedGraph {
        WeightedGraph::new(2, [(0, 1, 1.0)]).unwrap()
    }

    fn sample_graph() -> WeightedGraph {
        WeightedGraph::new(
            5,
            [(0, 1, 1.0), (1, 2, -0.5), (2, 3, 2.0), (0, 3, 1.5), (1, 3, -1.0), (3, 4, 0.7)],
        )
        .unwrap()
    }

    #[test]
    fn cut_table_matches_direct_evaluation() {
        let g = sample_graph();
        let table = cut_table(&g).unwrap();
        for (x, &v) in table.iter().enumerate() {
            let direct = cut_value(&g, &CutAssignment::from_bits(x as u64, 5)).unwrap();
            assert!((v - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_angles_leave_uniform_superposition() {
        let state = qaoa_state(&sample_graph(), QaoaParams::new(0.0, 0.0)).unwrap();
        let a = 1.0 / libm::sqrt(32.0);
        for amp in state.amplitudes() {
            assert!((amp.re - a).abs() < 1e-15 && amp.im.abs() < 1e-15);
        }
    }

    #[test]
    fn zero_gamma_gives_uniform_distribution_for_any_beta() {
        for beta in [0.3, 0.9, 1.4] {
            let state = qaoa_state(&sample_graph(), QaoaParams::new(0.0, beta)).unwrap();
            for p in state.probabilities() {
                assert!((p - 1.0 / 32.0).abs() < 1e-12);
            }
            let e = expectation_statevector(&sample_graph(), QaoaParams::new(0.0, beta)).unwrap();
            assert!((e - sample_graph().total_weight() / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_beta_expectation_is_half_total_weight() {
        let g = sample_graph();
        let e = expectation_statevector(&g, QaoaParams::new(0.77, 0.0)).unwrap();
        assert!((e - g.total_weight() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn k2_concentrates_on_the_maximum_cut() {
        let state = qaoa_state(&k2(), QaoaParams::new(PI / 2.0, PI / 8.0)).unwrap();
        let p = state.probabilities();
        assert!((p[0b01] + p[0b10] - 1.0).abs() < 1e-12);
        for cut in sample(&state, 1024, 7) {
            assert_eq!(cut_value(&k2(), &cut).unwrap(), 1.0);
        }
    }

    #[test]
    fn states_are_normalized() {
        let g = sample_graph();
        for (gamma, beta) in [(0.1, 0.2), (1.3, 0.4), (2.9, 1.5)] {
            let state = qaoa_state(&g, QaoaParams::new(gamma, beta)).unwrap();
            assert!((state.norm_sqr() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn basis_state_samples_are_constant() {
        let state = QaoaState::basis(3, 0b101);
        assert!(sample_bits(&state, 200, 1).iter().all(|&b| b == 0b101));
    }

    #[test]
    fn sampling_is_reproducible() {
        let state = qaoa_state(&sample_graph(), QaoaParams::new(0.4, 0.3)).unwrap();
        assert_eq!(sample_bits(&state, 500, 42), sample_bits(&state, 500, 42));
        assert_ne!(sample_bits(&state, 500, 42), sample_bits(&state, 500, 43));
    }

    #[test]
    fn uniform_samples_average_half_the_total_weight() {
        let g = sample_graph();
        let state = qaoa_state(&g, QaoaParams::new(0.0, 0.4)).unwrap();
        let n = 10_000;
        let mean: f64 = sample(&state, n, 11)
            .iter()
            .map(|c| cut_value(&g, c).unwrap())
            .sum::<f64>()
            / n as f64;
        // Edge indicators are pairwise independent under the uniform distribution.
        let variance: f64 = g.edges().iter().map(|e| e.weight * e.weight / 4.0).sum();
        let sigma = libm::sqrt(variance / n as f64);
        assert!((mean - g.total_weight() / 2.0).abs() <= 3.0 * sigma);
    }

    #[test]
    fn qubit_cap() {
        assert!(matches!(
            qaoa_state(&WeightedGraph::empty(25), QaoaParams::new(0.0, 0.0)),
            Err(QaoaError::TooManyQubits { qubits: 25, .. })
        ));
    }
}
