//! Relax, shrink, solve the reduced instance, reconstruct and score.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use cutshrink_core::exact::DEFAULT_VERTEX_CAP;
use cutshrink_core::qaoa::{self, weight_statistics, MAX_QUBITS};
use cutshrink_core::{
    approximation_ratio, brute_force, correlations_from_relaxation, cut_value, estimate_parameters,
    qaoa_state, reconstruct, shrink_to_target, solve_cycle_relaxation, CorrelationSet,
    CutAssignment, ExactCutSummary, ExactError, FractionalSolution, LpError, QaoaError,
    QaoaParams, ShrinkError, ShrinkState, WeightedGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::{sides_string, sig12};

/// Separation tolerance used when the caller does not choose one.
pub const DEFAULT_RELAXATION_TOL: f64 = 1e-6;
/// Samples per pipeline run unless overridden.
pub const DEFAULT_PIPELINE_SAMPLES: usize = 10_000;
/// Samples per landscape evaluation unless overridden.
pub const DEFAULT_LANDSCAPE_SAMPLES: usize = 1024;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("relaxation stage: {0}")]
    Relaxation(#[source] LpError),
    #[error("shrink stage: {0}")]
    Shrink(#[source] ShrinkError),
    #[error("solve stage: {0}")]
    Qaoa(#[source] QaoaError),
    #[error("solve stage: {0}")]
    Exact(#[source] ExactError),
    #[error("solve stage: reduced instance has {size} vertices, {subsolver} handles at most {cap}")]
    ReducedTooLarge {
        subsolver: SubsolverChoice,
        size: usize,
        cap: usize,
    },
    #[error("solve stage: at least one sample is required")]
    NoSamples,
    #[error("oracle stage: {0}")]
    Oracle(#[source] ExactError),
}

/// How the reduced instance is solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubsolverChoice {
    /// Exhaustive search; one optimal reduced assignment.
    Exact,
    /// Sampled depth-1 QAOA statevector at the estimated parameters.
    QaoaSim,
    /// Independent fair coin per reduced vertex.
    Coin,
}

impl SubsolverChoice {
    pub const ALL: [Self; 3] = [Self::Exact, Self::QaoaSim, Self::Coin];

    pub fn name(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::QaoaSim => "qaoa-sim",
            Self::Coin => "coin",
        }
    }
}

impl fmt::Display for SubsolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubsolverChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown subsolver {s:?}"))
    }
}

/// Source of the pair correlations that drive shrinking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorrelationMode {
    /// `b = 1 - 2x` from the triangle relaxation of the dense closure.
    Relaxation,
    /// All correlations zero: lexicographic pairs, merged with `σ = +1`.
    Zero,
}

impl CorrelationMode {
    pub const ALL: [Self; 2] = [Self::Relaxation, Self::Zero];

    pub fn name(self) -> &'static str {
        match self {
            Self::Relaxation => "relaxation",
            Self::Zero => "zero",
        }
    }
}

impl fmt::Display for CorrelationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorrelationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown correlation mode {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub target: usize,
    pub subsolver: SubsolverChoice,
    pub correlation_mode: CorrelationMode,
    pub samples: usize,
    pub seed: u64,
    pub relaxation_tol: f64,
}

impl PipelineConfig {
    pub fn new(target: usize, subsolver: SubsolverChoice, correlation_mode: CorrelationMode) -> Self {
        Self {
            target,
            subsolver,
            correlation_mode,
            samples: DEFAULT_PIPELINE_SAMPLES,
            seed: 0,
            relaxation_tol: DEFAULT_RELAXATION_TOL,
        }
    }
}

/// Wall-clock time per stage.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StageTimings {
    pub relax: Duration,
    pub shrink: Duration,
    pub solve: Duration,
    pub reconstruct: Duration,
    pub oracle: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub subsolver: SubsolverChoice,
    pub correlation_mode: CorrelationMode,
    /// LP bound; absent when the relaxation is not solved.
    pub upper_bound: Option<f64>,
    pub reduced_size: usize,
    pub offset: f64,
    pub skipped_pairs: usize,
    pub qaoa_params: Option<QaoaParams>,
    pub best_cut_value: f64,
    pub best_assignment: CutAssignment,
    pub mean_cut_value: f64,
    /// Number of scored reduced assignments.
    pub samples: usize,
    pub c_min: Option<f64>,
    pub c_max: Option<f64>,
    /// `(mean - c_min) / (c_max - c_min)`; present iff the oracle ran.
    pub approximation_ratio: Option<f64>,
    pub seed: u64,
    pub timings: StageTimings,
}

impl PipelineReport {
    /// Flat `key=value` lines. Timings come last so callers can strip them.
    pub fn to_key_values(&self) -> String {
        let opt = |x: Option<f64>| x.map_or_else(|| "none".to_string(), |v| v.to_string());
        let sides = sides_string(&self.best_assignment);
        let mut out = String::new();
        let _ = writeln!(out, "vertices={}", self.vertex_count);
        let _ = writeln!(out, "edges={}", self.edge_count);
        let _ = writeln!(out, "subsolver={}", self.subsolver);
        let _ = writeln!(out, "correlation_mode={}", self.correlation_mode);
        let _ = writeln!(out, "upper_bound={}", opt(self.upper_bound));
        let _ = writeln!(out, "reduced_size={}", self.reduced_size);
        let _ = writeln!(out, "offset={}", self.offset);
        let _ = writeln!(out, "skipped_pairs={}", self.skipped_pairs);
        let _ = writeln!(out, "gamma={}", opt(self.qaoa_params.map(|p| p.gamma)));
        let _ = writeln!(out, "beta={}", opt(self.qaoa_params.map(|p| p.beta)));
        let _ = writeln!(out, "best_cut_value={}", self.best_cut_value);
        let _ = writeln!(out, "best_assignment={sides}");
        let _ = writeln!(out, "mean_cut_value={}", self.mean_cut_value);
        let _ = writeln!(out, "samples={}", self.samples);
        let _ = writeln!(out, "seed={}", self.seed);
        let _ = writeln!(out, "c_min={}", opt(self.c_min));
        let _ = writeln!(out, "c_max={}", opt(self.c_max));
        let _ = writeln!(out, "approximation_ratio={}", opt(self.approximation_ratio));
        let t = &self.timings;
        for (name, d) in [
            ("relax", t.relax),
            ("shrink", t.shrink),
            ("solve", t.solve),
            ("reconstruct", t.reconstruct),
            ("oracle", t.oracle),
        ] {
            let _ = writeln!(out, "time_{name}_s={:.6}", d.as_secs_f64());
        }
        out
    }
}

/// Correlations for `mode`, plus the relaxation when one was solved.
pub fn correlations_for(
    graph: &WeightedGraph,
    mode: CorrelationMode,
    tol: f64,
) -> Result<(CorrelationSet, Option<FractionalSolution>), PipelineError> {
    match mode {
        CorrelationMode::Zero => Ok((CorrelationSet::zeros(graph.vertex_count()), None)),
        CorrelationMode::Relaxation => {
            let solution = solve_cycle_relaxation(graph, tol).map_err(PipelineError::Relaxation)?;
            Ok((correlations_from_relaxation(&solution), Some(solution)))
        }
    }
}

/// QAOA angles for a reduced instance.
///
/// Falls back when the closed-form estimate is undefined: `γ = π/(2ā)` for
/// average degree at most 1 (optimal for disjoint equal-magnitude edges) and
/// `γ = 0` for an edgeless graph.
pub fn reduced_qaoa_params(graph: &WeightedGraph) -> QaoaParams {
    match estimate_parameters(graph) {
        Ok(p) => p,
        Err(_) => match weight_statistics(graph) {
            Some((mean_abs_weight, _)) => QaoaParams::new(
                std::f64::consts::FRAC_PI_2 / mean_abs_weight,
                std::f64::consts::FRAC_PI_8,
            ),
            None => QaoaParams::new(0.0, std::f64::consts::FRAC_PI_8),
        },
    }
}

/// Reduced assignments drawn by `subsolver`, as basis indices over the
/// active vertices of `state`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSolve {
    pub bits: Vec<u64>,
    pub params: Option<QaoaParams>,
}

pub fn solve_reduced(
    state: &ShrinkState,
    subsolver: SubsolverChoice,
    samples: usize,
    seed: u64,
) -> Result<ReducedSolve, PipelineError> {
    let reduced = state.reduced_graph();
    let k = reduced.vertex_count();
    let cap = match subsolver {
        SubsolverChoice::Exact => DEFAULT_VERTEX_CAP,
        SubsolverChoice::QaoaSim => MAX_QUBITS,
        SubsolverChoice::Coin => 63,
    };
    if k > cap {
        return Err(PipelineError::ReducedTooLarge {
            subsolver,
            size: k,
            cap,
        });
    }
    if samples == 0 && subsolver != SubsolverChoice::Exact {
        return Err(PipelineError::NoSamples);
    }
    match subsolver {
        SubsolverChoice::Exact => {
            let summary = brute_force(&reduced).map_err(PipelineError::Exact)?;
            Ok(ReducedSolve {
                bits: vec![summary.argmax.to_bits().expect("at most 24 vertices")],
                params: None,
            })
        }
        SubsolverChoice::QaoaSim => {
            let params = reduced_qaoa_params(&reduced);
            let state = qaoa_state(&reduced, params).map_err(PipelineError::Qaoa)?;
            Ok(ReducedSolve {
                bits: qaoa::sample_bits(&state, samples, seed),
                params: Some(params),
            })
        }
        SubsolverChoice::Coin => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mask = if k == 0 { 0 } else { u64::MAX >> (64 - k) };
            Ok(ReducedSolve {
                bits: (0..samples).map(|_| rng.random::<u64>() & mask).collect(),
                params: None,
            })
        }
    }
}

/// Per-sample cut values on the original graph, plus the best assignment.
pub fn score_samples(
    state: &ShrinkState,
    bits: &[u64],
) -> Result<(Vec<f64>, CutAssignment), PipelineError> {
    let k = state.reduced_vertex_count();
    let mut cache: HashMap<u64, f64> = HashMap::new();
    let mut best: Option<(f64, u64)> = None;
    let mut values = Vec::with_capacity(bits.len());
    for &b in bits {
        let value = match cache.get(&b) {
            Some(&v) => v,
            None => {
                let full = reconstruct(state, &CutAssignment::from_bits(b, k))
                    .map_err(PipelineError::Shrink)?;
                let v = cut_value(state.original(), &full).expect("reconstruction has full length");
                cache.insert(b, v);
                v
            }
        };
        if best.is_none_or(|(bv, _)| value > bv) {
            best = Some((value, b));
        }
        values.push(value);
    }
    let best_bits = best.map_or(0, |(_, b)| b);
    let assignment = reconstruct(state, &CutAssignment::from_bits(best_bits, k))
        .map_err(PipelineError::Shrink)?;
    Ok((values, assignment))
}

/// Exhaustive bounds when the instance is small enough.
pub fn oracle_bounds(graph: &WeightedGraph) -> Result<Option<ExactCutSummary>, PipelineError> {
    if graph.vertex_count() > DEFAULT_VERTEX_CAP {
        return Ok(None);
    }
    brute_force(graph).map(Some).map_err(PipelineError::Oracle)
}

struct Prepared<'a> {
    graph: &'a WeightedGraph,
    correlations: &'a CorrelationSet,
    upper_bound: Option<f64>,
    oracle: Option<&'a ExactCutSummary>,
    relax_time: Duration,
    oracle_time: Duration,
}

fn run_prepared(
    prepared: &Prepared<'_>,
    config: &PipelineConfig,
) -> Result<PipelineReport, PipelineError> {
    let graph = prepared.graph;
    let mut timings = StageTimings {
        relax: prepared.relax_time,
        oracle: prepared.oracle_time,
        ..StageTimings::default()
    };

    let t = Instant::now();
    let state = shrink_to_target(graph, prepared.correlations, config.target)
        .map_err(PipelineError::Shrink)?;
    timings.shrink = t.elapsed();

    let t = Instant::now();
    let solve = solve_reduced(&state, config.subsolver, config.samples, config.seed)?;
    timings.solve = t.elapsed();

    let t = Instant::now();
    let (values, best_assignment) = score_samples(&state, &solve.bits)?;
    timings.reconstruct = t.elapsed();

    let mean_cut_value = values.iter().sum::<f64>() / values.len() as f64;
    let best_cut_value = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (c_min, c_max) = match prepared.oracle {
        Some(s) => (Some(s.min_value), Some(s.max_value)),
        None => (None, None),
    };
    // A constant objective has no meaningful ratio; every cut is optimal.
    let ratio = prepared.oracle.map(|s| {
        approximation_ratio(mean_cut_value, s.min_value, s.max_value).unwrap_or(1.0)
    });

    Ok(PipelineReport {
        vertex_count: graph.vertex_count(),
        edge_count: graph.edge_count(),
        subsolver: config.subsolver,
        correlation_mode: config.correlation_mode,
        upper_bound: prepared.upper_bound,
        reduced_size: state.reduced_vertex_count(),
        offset: state.offset(),
        skipped_pairs: state.skipped(),
        qaoa_params: solve.params,
        best_cut_value,
        best_assignment,
        mean_cut_value,
        samples: values.len(),
        c_min,
        c_max,
        approximation_ratio: ratio,
        seed: config.seed,
        timings,
    })
}

/// Runs every stage on `graph` and scores the result on `graph` itself.
pub fn run_pipeline(
    graph: &WeightedGraph,
    config: &PipelineConfig,
) -> Result<PipelineReport, PipelineError> {
    let t = Instant::now();
    let (correlations, relaxation) =
        correlations_for(graph, config.correlation_mode, config.relaxation_tol)?;
    let relax_time = t.elapsed();

    let t = Instant::now();
    let oracle = oracle_bounds(graph)?;
    let oracle_time = t.elapsed();

    run_prepared(
        &Prepared {
            graph,
            correlations: &correlations,
            upper_bound: relaxation.map(|r| r.objective_value),
            oracle: oracle.as_ref(),
            relax_time,
            oracle_time,
        },
        config,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub deleted_vertices: usize,
    pub correlation_mode: CorrelationMode,
    pub subsolver: SubsolverChoice,
    pub reduced_size: usize,
    pub mean_cut_value: f64,
    pub best_cut_value: f64,
    pub approximation_ratio: f64,
}

/// Approximation ratio for every shrink count `0..|V|`, mode and subsolver.
///
/// The relaxation and the oracle are computed once and shared by all rows.
pub fn sweep_shrink_counts(
    graph: &WeightedGraph,
    subsolvers: &[SubsolverChoice],
    modes: &[CorrelationMode],
    samples: usize,
    seed: u64,
) -> Result<Vec<SweepRow>, PipelineError> {
    let t = Instant::now();
    let oracle = brute_force(graph).map_err(PipelineError::Oracle)?;
    let oracle_time = t.elapsed();
    let n = graph.vertex_count();
    let mut rows = Vec::new();
    for &mode in modes {
        let t = Instant::now();
        let (correlations, relaxation) = correlations_for(graph, mode, DEFAULT_RELAXATION_TOL)?;
        let prepared = Prepared {
            graph,
            correlations: &correlations,
            upper_bound: relaxation.map(|r| r.objective_value),
            oracle: Some(&oracle),
            relax_time: t.elapsed(),
            oracle_time,
        };
        for deleted in 0..n {
            for &subsolver in subsolvers {
                let config = PipelineConfig {
                    target: n - deleted,
                    subsolver,
                    correlation_mode: mode,
                    samples,
                    seed,
                    relaxation_tol: DEFAULT_RELAXATION_TOL,
                };
                let report = run_prepared(&prepared, &config)?;
                rows.push(SweepRow {
                    deleted_vertices: deleted,
                    correlation_mode: mode,
                    subsolver,
                    reduced_size: report.reduced_size,
                    mean_cut_value: report.mean_cut_value,
                    best_cut_value: report.best_cut_value,
                    approximation_ratio: report.approximation_ratio.expect("oracle bounds present"),
                });
            }
        }
    }
    Ok(rows)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "deleted_vertices,mode,subsolver,reduced_size,mean_cut_value,best_cut_value,approximation_ratio\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.deleted_vertices,
            r.correlation_mode,
            r.subsolver,
            r.reduced_size,
            sig12(r.mean_cut_value),
            sig12(r.best_cut_value),
            sig12(r.approximation_ratio)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_2x3() -> WeightedGraph {
        WeightedGraph::new(
            6,
            [
                (0, 1, 1.0),
                (1, 2, -1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (0, 3, -1.0),
                (1, 4, 1.0),
                (2, 5, 1.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn names_round_trip() {
        for s in SubsolverChoice::ALL {
            assert_eq!(s.name().parse::<SubsolverChoice>().unwrap(), s);
        }
        for m in CorrelationMode::ALL {
            assert_eq!(m.name().parse::<CorrelationMode>().unwrap(), m);
        }
        assert!("quantum".parse::<SubsolverChoice>().is_err());
    }

    #[test]
    fn no_shrinking_with_exact_solver_hits_the_optimum() {
        let g = grid_2x3();
        for mode in CorrelationMode::ALL {
            let r = run_pipeline(&g, &PipelineConfig::new(6, SubsolverChoice::Exact, mode)).unwrap();
            assert_eq!(r.best_cut_value, r.c_max.unwrap());
            assert_eq!(r.approximation_ratio, Some(1.0));
            assert_eq!(r.samples, 1);
        }
    }

    #[test]
    fn fallback_parameters() {
        let k2 = WeightedGraph::new(2, [(0, 1, -2.0)]).unwrap();
        let p = reduced_qaoa_params(&k2);
        assert!((p.gamma - std::f64::consts::PI / 4.0).abs() < 1e-15);
        let f = cutshrink_core::expectation_analytic(&k2, p).unwrap();
        assert!(f.abs() < 1e-12, "{f}");
        assert_eq!(reduced_qaoa_params(&WeightedGraph::empty(3)).gamma, 0.0);
    }

    #[test]
    fn zero_mode_has_no_upper_bound() {
        let mut config = PipelineConfig::new(3, SubsolverChoice::Coin, CorrelationMode::Zero);
        config.samples = 50;
        let r = run_pipeline(&grid_2x3(), &config).unwrap();
        assert_eq!(r.upper_bound, None);
        assert_eq!(r.reduced_size, 3);
        assert!(r.to_key_values().contains("upper_bound=none\n"));
    }

    #[test]
    fn errors_name_their_stage() {
        let err = run_pipeline(
            &grid_2x3(),
            &PipelineConfig::new(0, SubsolverChoice::Exact, CorrelationMode::Zero),
        )
        .unwrap_err();
        assert!(err.to_string().starts_with("shrink stage"), "{err}");
        let mut config = PipelineConfig::new(2, SubsolverChoice::Coin, CorrelationMode::Zero);
        config.samples = 0;
        let err = run_pipeline(&grid_2x3(), &config).unwrap_err();
        assert!(err.to_string().starts_with("solve stage"), "{err}");
    }

    #[test]
    fn sweep_table_shape() {
        let rows = sweep_shrink_counts(
            &grid_2x3(),
            &SubsolverChoice::ALL,
            &CorrelationMode::ALL,
            64,
            1,
        )
        .unwrap();
        assert_eq!(rows.len(), 2 * 6 * 3);
        let csv = sweep_csv(&rows);
        assert_eq!(csv.lines().count(), rows.len() + 1);
        assert!(csv.starts_with("deleted_vertices,mode,subsolver,"));
    }
}
