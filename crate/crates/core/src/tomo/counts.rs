use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use super::TomoError;
use crate::qmath::{eigh, ComplexMatrix, DensityMatrix, PureState};
use crate::rng::substream;

/// Polarization analyzer settings: the six Pauli eigenstates.
///
/// `R = (|H⟩ + i|V⟩)/√2`, `L = (|H⟩ − i|V⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliSetting {
    H,
    V,
    D,
    A,
    R,
    L,
}

impl PauliSetting {
    pub const ALL: [PauliSetting; 6] = [Self::H, Self::V, Self::D, Self::A, Self::R, Self::L];

    pub fn label(self) -> &'static str {
        match self {
            Self::H => "H",
            Self::V => "V",
            Self::D => "D",
            Self::A => "A",
            Self::R => "R",
            Self::L => "L",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.label() == label)
    }

    pub fn ket(self) -> PureState {
        let r = FRAC_1_SQRT_2;
        let amps = match self {
            Self::H => [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            Self::V => [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            Self::D => [Complex64::new(r, 0.0), Complex64::new(r, 0.0)],
            Self::A => [Complex64::new(r, 0.0), Complex64::new(-r, 0.0)],
            Self::R => [Complex64::new(r, 0.0), Complex64::new(0.0, r)],
            Self::L => [Complex64::new(r, 0.0), Complex64::new(0.0, -r)],
        };
        PureState::new(amps.to_vec()).expect("unit ket")
    }

    pub fn projector(self) -> ComplexMatrix {
        self.ket().projector()
    }
}

/// One analyzer setting: a projector on a branch's local space.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSetting {
    pub label: String,
    /// Output path the analyzer sits in (0-based). Ignored when the projector
    /// already has the state's full dimension.
    pub branch: usize,
    pub projector: ComplexMatrix,
}

impl MeasurementSetting {
    pub fn pauli(setting: PauliSetting, branch: usize) -> Self {
        Self {
            label: setting.label().to_string(),
            branch,
            projector: setting.projector(),
        }
    }
}

/// The six Pauli settings on one branch.
pub fn pauli_settings(branch: usize) -> Vec<MeasurementSetting> {
    PauliSetting::ALL
        .iter()
        .map(|&s| MeasurementSetting::pauli(s, branch))
        .collect()
}

/// The given settings repeated on each of `n_branches` output paths.
pub fn branch_settings(n_branches: usize, settings: &[PauliSetting]) -> Vec<MeasurementSetting> {
    (0..n_branches)
        .flat_map(|b| settings.iter().map(move |&s| MeasurementSetting::pauli(s, b)))
        .collect()
}

/// Recorded counts for one setting.
#[derive(Debug, Clone, PartialEq)]
pub struct CountRecord {
    pub label: String,
    pub branch: usize,
    /// Local projector used for reconstruction.
    pub projector: ComplexMatrix,
    pub counts: u64,
    pub exposure: f64,
}

impl CountRecord {
    pub fn new(setting: &MeasurementSetting, counts: u64, exposure: f64) -> Result<Self, TomoError> {
        if exposure <= 0.0 || !exposure.is_finite() {
            return Err(TomoError::InvalidExposure(exposure));
        }
        Ok(Self {
            label: setting.label.clone(),
            branch: setting.branch,
            projector: setting.projector.clone(),
            counts,
            exposure,
        })
    }

    pub fn with_counts(&self, counts: u64) -> Self {
        Self { counts, ..self.clone() }
    }
}

/// Projector of `setting` on the full space of a `state_dim`-dimensional state.
pub(crate) fn embedded_projector(setting: &MeasurementSetting, state_dim: usize) -> Result<ComplexMatrix, TomoError> {
    let local = setting.projector.rows();
    if local == state_dim {
        return Ok(setting.projector.clone());
    }
    if local == 0 || !state_dim.is_multiple_of(local) || setting.branch >= state_dim / local {
        return Err(TomoError::EmbeddingMismatch {
            projector: local,
            state: state_dim,
            branch: setting.branch,
        });
    }
    let n_branches = state_dim / local;
    let mut selector = ComplexMatrix::zeros(n_branches, n_branches);
    selector.set(setting.branch, setting.branch, Complex64::new(1.0, 0.0));
    Ok(selector.kron(&setting.projector))
}

fn check_projector(index: usize, p: &ComplexMatrix) -> Result<(), TomoError> {
    let spectrum = eigh(p).map_err(|_| TomoError::InvalidProjector { index })?;
    let (max, min) = (spectrum.values[0], *spectrum.values.last().unwrap_or(&0.0));
    if min < -1e-10 || max > 1.0 + 1e-10 {
        return Err(TomoError::InvalidProjector { index });
    }
    Ok(())
}

/// Poisson draw; a zero mean always yields zero.
pub fn poisson_sample(rng: &mut impl Rng, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(mean).expect("positive finite mean");
    dist.sample(rng) as u64
}

/// Draws Poisson counts for every setting. Setting `j` uses substream
/// `(seed, j, 0)`.
pub fn simulate_counts(
    state: &DensityMatrix,
    settings: &[MeasurementSetting],
    flux: f64,
    exposure: f64,
    seed: u64,
) -> Result<Vec<CountRecord>, TomoError> {
    if flux <= 0.0 || !flux.is_finite() {
        return Err(TomoError::InvalidFlux(flux));
    }
    if exposure <= 0.0 || !exposure.is_finite() {
        return Err(TomoError::InvalidExposure(exposure));
    }
    settings
        .iter()
        .enumerate()
        .map(|(j, setting)| {
            check_projector(j, &setting.projector)?;
            let full = embedded_projector(setting, state.dim())?;
            let probability = state.expectation(&full)?.max(0.0);
            let mut rng = substream(seed, j as u64, 0);
            let counts = poisson_sample(&mut rng, flux * exposure * probability);
            CountRecord::new(setting, counts, exposure)
        })
        .collect()
}
