use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cutshrink::core::{
    brute_force, correlations_from_relaxation, estimate_parameters, grid_search, shrink_to_target,
    solve_cycle_relaxation, CorrelationSet, Evaluator,
};
use cutshrink::format::{landscape_csv, oracle_record, relaxation_dump, shrink_trace, write_instance};
use cutshrink::instances::{self, WeightKind};
use cutshrink::pipeline::{
    run_pipeline, sweep_csv, sweep_shrink_counts, CorrelationMode, PipelineConfig,
    SubsolverChoice, DEFAULT_PIPELINE_SAMPLES, DEFAULT_RELAXATION_TOL,
};
use cutshrink::read_instance;
use cutshrink_core::deviation_ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "cutshrink", version, about = "Relax, shrink and QAOA-solve weighted MaxCut instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance exhaustively (at most 24 vertices).
    Oracle { file: PathBuf },
    /// Solve the triangle relaxation and dump the fractional point.
    Relax {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RELAXATION_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shrink to K vertices and print the contraction trace.
    Shrink {
        file: PathBuf,
        #[arg(long)]
        target: usize,
        #[arg(long, value_enum, default_value_t = Mode::Relaxation)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the depth-1 expectation on a grid over [0, π/2]².
    QaoaLandscape {
        file: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, value_enum, default_value_t = EvaluatorArg::Analytic)]
        evaluator: EvaluatorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run relax, shrink, solve and reconstruct once.
    Pipeline {
        file: PathBuf,
        #[arg(long)]
        target: usize,
        #[arg(long, value_enum, default_value_t = Subsolver::QaoaSim)]
        subsolver: Subsolver,
        #[arg(long, value_enum, default_value_t = Mode::Relaxation)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_PIPELINE_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RELAXATION_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximation ratio against the number of shrunk vertices, as CSV.
    Sweep {
        file: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Subsolver::Exact, Subsolver::QaoaSim, Subsolver::Coin])]
        subsolvers: Vec<Subsolver>,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Mode::Relaxation, Mode::Zero])]
        modes: Vec<Mode>,
        #[arg(long, default_value_t = DEFAULT_PIPELINE_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a generated instance.
    Generate {
        #[arg(value_enum)]
        family: Family,
        /// Vertex count, or rows for grids.
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// Columns for grids, degree for regular graphs, chord cap for
        /// triangle-free rings (0 adds chords until none fits).
        #[arg(long, default_value_t = 3)]
        param: usize,
        /// Edge probability for random graphs.
        #[arg(long, default_value_t = 0.2)]
        probability: f64,
        #[arg(long, value_enum, default_value_t = Weights::PlusMinusOne)]
        weights: Weights,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Relaxation,
    Zero,
}

impl From<Mode> for CorrelationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Relaxation => CorrelationMode::Relaxation,
            Mode::Zero => CorrelationMode::Zero,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Subsolver {
    Exact,
    QaoaSim,
    Coin,
}

impl From<Subsolver> for SubsolverChoice {
    fn from(s: Subsolver) -> Self {
        match s {
            Subsolver::Exact => SubsolverChoice::Exact,
            Subsolver::QaoaSim => SubsolverChoice::QaoaSim,
            Subsolver::Coin => SubsolverChoice::Coin,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EvaluatorArg {
    Analytic,
    Statevector,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Ring,
    Star,
    Complete,
    RingChord,
    Grid,
    Torus,
    Regular,
    TriangleFree,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weights {
    Unit,
    PlusMinusOne,
    Normal,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Oracle { file } => {
            let g = read_instance(&file)?;
            let summary = brute_force(&g).context("oracle")?;
            emit(None, &oracle_record(&summary))
        }
        Command::Relax { file, tol, out } => {
            let g = read_instance(&file)?;
            let solution = solve_cycle_relaxation(&g, tol).context("relaxation stage")?;
            emit(out.as_deref(), &relaxation_dump(&solution))
        }
        Command::Shrink {
            file,
            target,
            mode,
            out,
        } => {
            let g = read_instance(&file)?;
            let correlations = match mode {
                Mode::Zero => CorrelationSet::zeros(g.vertex_count()),
                Mode::Relaxation => correlations_from_relaxation(
                    &solve_cycle_relaxation(&g, DEFAULT_RELAXATION_TOL)
                        .context("relaxation stage")?,
                ),
            };
            let state = shrink_to_target(&g, &correlations, target).context("shrink stage")?;
            let header = format!(
                "# reduced_size={} offset={} skipped_pairs={}\n",
                state.reduced_vertex_count(),
                state.offset(),
                state.skipped()
            );
            emit(out.as_deref(), &(header + &shrink_trace(&state)))
        }
        Command::QaoaLandscape {
            file,
            step,
            evaluator,
            out,
        } => {
            let g = read_instance(&file)?;
            let evaluator = match evaluator {
                EvaluatorArg::Analytic => Evaluator::Analytic,
                EvaluatorArg::Statevector => Evaluator::Statevector,
            };
            let landscape = grid_search(&g, step, evaluator).context("grid search")?;
            let csv = landscape_csv(&landscape);
            emit(out.as_deref(), &csv)?;
            let mut summary = format!(
                "max_value={}\nmin_value={}\nargmax_gamma={}\nargmax_beta={}\n",
                landscape.max_value,
                landscape.min_value,
                landscape.argmax.gamma,
                landscape.argmax.beta
            );
            if let Ok(p) = estimate_parameters(&g) {
                let value = evaluator.evaluate(&g, p).context("estimate evaluation")?;
                summary += &format!(
                    "estimate_gamma={}\nestimate_beta={}\nestimate_value={}\ndeviation_ratio={}\n",
                    p.gamma,
                    p.beta,
                    value,
                    deviation_ratio(&landscape, value)
                );
            }
            if out.is_some() {
                print!("{summary}");
            } else {
                eprint!("{summary}");
            }
            Ok(())
        }
        Command::Pipeline {
            file,
            target,
            subsolver,
            mode,
            samples,
            seed,
            tol,
            out,
        } => {
            let g = read_instance(&file)?;
            let config = PipelineConfig {
                target,
                subsolver: subsolver.into(),
                correlation_mode: mode.into(),
                samples,
                seed,
                relaxation_tol: tol,
            };
            let report = run_pipeline(&g, &config)?;
            emit(out.as_deref(), &report.to_key_values())
        }
        Command::Sweep {
            file,
            subsolvers,
            modes,
            samples,
            seed,
            out,
        } => {
            let g = read_instance(&file)?;
            if g.vertex_count() > 24 {
                bail!("sweep needs exhaustive bounds; {} vertices exceed 24", g.vertex_count());
            }
            let subsolvers: Vec<SubsolverChoice> = subsolvers.into_iter().map(Into::into).collect();
            let modes: Vec<CorrelationMode> = modes.into_iter().map(Into::into).collect();
            let rows = sweep_shrink_counts(&g, &subsolvers, &modes, samples, seed)?;
            emit(out.as_deref(), &sweep_csv(&rows))
        }
        Command::Generate {
            family,
            size,
            param,
            probability,
            weights,
            seed,
            out,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (n, pairs) = match family {
                Family::Ring => (size, instances::ring_pairs(size)),
                Family::Star => (size, instances::star_pairs(size)),
                Family::Complete => (size, instances::complete_pairs(size)),
                Family::RingChord => (size, instances::ring_with_chord_pairs(size)),
                Family::Grid => (size * param, instances::grid_pairs(size, param)),
                Family::Torus => (size * param, instances::toroidal_grid_pairs(size, param)),
                Family::Regular => {
                    if param >= size || (size * param) % 2 == 1 {
                        bail!("no simple {param}-regular graph on {size} vertices");
                    }
                    (size, instances::random_regular_pairs(size, param, &mut rng))
                }
                Family::TriangleFree => {
                    let cap = (param > 0).then_some(param);
                    (size, instances::triangle_free_ring_pairs(size, cap, &mut rng))
                }
                Family::Random => (size, instances::erdos_renyi_pairs(size, probability, &mut rng)),
            };
            let kind = match weights {
                Weights::Unit => WeightKind::Unit,
                Weights::PlusMinusOne => WeightKind::PlusMinusOne,
                Weights::Normal => WeightKind::Normal,
            };
            let g = instances::weighted(n, &pairs, kind, &mut rng);
            emit(out.as_deref(), &write_instance(&g))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
