//! Photon-counting measurement simulation and state reconstruction.
//!
//! Counts are Poisson with mean `flux × exposure × Tr(Π ρ)`. States are
//! recovered by iterative maximum likelihood, which always yields a physical
//! density matrix, and uncertainties come from a parametric bootstrap that
//! resamples every count around its observed value.

mod branch;
pub(crate) mod counts;
mod csvio;
mod mle;
mod montecarlo;

pub use branch::split_branches;
pub use branch::{path_state_from_branch, weighted_two_branch_reconstruct, TwoBranchResult};
pub use counts::{
    branch_settings, pauli_settings, poisson_sample, simulate_counts, CountRecord, MeasurementSetting, PauliSetting,
};
pub use csvio::{read_records_csv, write_records_csv};
pub use mle::{mle_reconstruct, mle_reconstruct_with, MleOptions, TomoResult};
pub use montecarlo::{monte_carlo_error, monte_carlo_errors, resample_counts, McEstimate};

use thiserror::Error;

use crate::qmath::QmathError;

/// Default coincidence rate, counts per second.
pub const DEFAULT_FLUX: f64 = 5.0e3;
/// Default exposure per data point, seconds.
pub const DEFAULT_EXPOSURE_S: f64 = 10.0;
/// Default number of bootstrap resamples.
pub const DEFAULT_MC_SAMPLES: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TomoError {
    #[error("projector {index} has eigenvalues outside [0, 1]")]
    InvalidProjector { index: usize },
    #[error("projector of dimension {projector} does not fit a state of dimension {state} (branch {branch})")]
    EmbeddingMismatch {
        projector: usize,
        state: usize,
        branch: usize,
    },
    #[error("exposure must be positive, got {0}")]
    InvalidExposure(f64),
    #[error("flux must be positive, got {0}")]
    InvalidFlux(f64),
    #[error("measurement set spans {rank} of {needed} operator dimensions")]
    InformationallyIncomplete { rank: usize, needed: usize },
    #[error("all counts are zero")]
    NoCounts,
    #[error("no records given")]
    NoRecords,
    #[error("unknown setting label `{0}`")]
    UnknownSetting(String),
    #[error("branch {branch} has no counts")]
    EmptyBranch { branch: usize },
    #[error("need at least 2 Monte-Carlo samples, got {0}")]
    TooFewSamples(usize),
    #[error("pipeline failed on resample {sample}: {message}")]
    Pipeline { sample: usize, message: String },
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    Qmath(#[from] QmathError),
}
