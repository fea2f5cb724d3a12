//! Random-projector diagnostics: isotropic probe batches, the accumulator
//! and its two witnesses, Lyapunov slopes, the critical-n decision rule and
//! the miss-probability bounds that justify it.

mod directions;
mod embedding;
mod miss;
mod run;
mod witness;

pub use directions::{derive_seed, mix64, orthonormal_frame, sample_directions, DirectionBatch};
pub use embedding::{ConstraintRestricted, Embedding, ProbeSet, SeedSchedule};
pub use miss::{chernoff_miss, chernoff_miss_k_relative, miss_probability, MissProbabilityModel};
pub use run::{
    control_record, decide_critical, default_tau_exp, evaluate_cell, run_diagnostics, CellResult, Decision,
    DiagnosticsConfig, DiagnosticsRecord, DiagnosticsRun, Thresholds, DEFAULT_ALPHA_GRID, DEFAULT_SEEDS,
    SLOPE_ALPHA_MAX,
};
pub use witness::{
    build_accumulator, deflation_norm_mc, exp_witness, exp_witness_grid, linear_product, linear_witness,
    lyapunov_rate, mean_field_trace, slope_fit, LinearWitness, MonteCarloEstimate,
};

use crate::graded::GradedError;
use crate::spectral::SpectralError;

#[derive(Debug, thiserror::Error)]
pub enum DiagnosticsError {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("count must be positive, got {0}")]
    InvalidCount(usize),
    #[error("direction vector has zero or non-finite norm")]
    ZeroDirection,
    #[error("alpha must be finite and non-negative, got {0}")]
    InvalidAlpha(f64),
    #[error("slope fit needs at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("all grid points coincide; slope undefined")]
    DegenerateGrid,
    #[error("survivor rank {r} outside [1, {d}]")]
    InvalidModel { r: usize, d: usize },
    #[error("Chernoff deviation {delta} outside (0, 1]; the mean number of hits is below r - 1")]
    ChernoffDomain { delta: f64 },
    #[error("no survivor rank known for n = {0}")]
    UnknownRank(u32),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("control coloring contains a forbidden monochromatic clique")]
    BadControl,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}
