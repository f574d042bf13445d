//! IO, instance generators and the end-to-end pipeline around `cutshrink-core`.
//!
//! The binary in `main.rs` exposes these as subcommands; everything here is
//! also usable as a library.

pub mod format;
pub mod instances;
pub mod pipeline;

pub use cutshrink_core as core;
pub use format::{parse_instance, read_instance, write_instance, ParseError};
pub use pipeline::{
    run_pipeline, solve_reduced, sweep_shrink_counts, CorrelationMode, PipelineConfig,
    PipelineError, PipelineReport, SubsolverChoice, SweepRow,
};
