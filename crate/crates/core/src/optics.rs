//! Path ⊗ polarization model of the which-way interferometer.
//!
//! Basis ordering is path-major, polarization-minor: for two paths the basis
//! is `(1,H), (1,V), (2,H), (2,V)`. Paths are 0-based in code (`0` is path-1).
//! Jones matrices use `HWP(α) = [[cos2α, sin2α], [sin2α, −cos2α]]`.
//!
//! Beam displacers are routing permutations of the labeled basis. The
//! three- and four-path intermediate stages of the measurement interferometer
//! are folded into an effective two-path chain whose product is checked
//! against the closed-form composite unitary of each measurement mode.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use thiserror::Error;

use crate::qmath::{partial_trace, ComplexMatrix, DensityMatrix, PureState, QmathError, Subsystem};

pub const H: usize = 0;
pub const V: usize = 1;
pub const POLARIZATION_DIM: usize = 2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpticsError {
    #[error("detector angle {0}° outside [0°, 90°]")]
    AngleOutOfRange(f64),
    #[error("path index {path} out of range for {n_paths} paths")]
    PathOutOfRange { path: usize, n_paths: usize },
    #[error("routing map is not a permutation of {0} basis states")]
    InvalidRouting(usize),
    #[error(transparent)]
    Qmath(#[from] QmathError),
}

/// Detector-state angle θ in degrees, restricted to `[0°, 90°]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DetectorAngle(f64);

impl DetectorAngle {
    pub fn new(degrees: f64) -> Result<Self, OpticsError> {
        if !(0.0..=90.0).contains(&degrees) {
            return Err(OpticsError::AngleOutOfRange(degrees));
        }
        Ok(Self(degrees))
    }

    pub fn degrees(self) -> f64 {
        self.0
    }

    pub fn radians(self) -> f64 {
        self.0.to_radians()
    }
}

/// Which paths an element sits in.
#[derive(Debug, Clone, PartialEq)]
pub enum Paths {
    All,
    Only(Vec<usize>),
}

impl Paths {
    fn contains(&self, path: usize) -> bool {
        match self {
            Paths::All => true,
            Paths::Only(list) => list.contains(&path),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OpticalElement {
    HalfWavePlate {
        angle_deg: f64,
        paths: Paths,
    },
    QuarterWavePlate {
        angle_deg: f64,
        paths: Paths,
    },
    /// Phase `e^{iφ}` on every polarization of one path.
    PhaseShift {
        phase_deg: f64,
        path: usize,
    },
    /// `routing[k]` is the basis index that basis state `k` is sent to.
    BeamDisplacer {
        routing: Vec<usize>,
    },
    Identity,
}

impl OpticalElement {
    pub fn hwp(angle_deg: f64, paths: Paths) -> Self {
        Self::HalfWavePlate { angle_deg, paths }
    }

    pub fn qwp(angle_deg: f64, paths: Paths) -> Self {
        Self::QuarterWavePlate { angle_deg, paths }
    }

    /// Two-path displacer that trades the path label for the polarization
    /// label: `|p, s⟩ → |s, p⟩`. Merging two paths onto one beam and splitting
    /// it again both reduce to this routing.
    pub fn path_polarization_exchange() -> Self {
        let routing = (0..4).map(|k| {
            let (p, s) = (k / 2, k % 2);
            s * 2 + p
        });
        Self::BeamDisplacer {
            routing: routing.collect(),
        }
    }

    /// Relabels two paths, `|1, s⟩ ↔ |2, s⟩`.
    pub fn path_exchange() -> Self {
        Self::BeamDisplacer {
            routing: vec![2, 3, 0, 1],
        }
    }

    /// First displacer of the preparation stage: vertical light stays on
    /// path-1, horizontal light is displaced onto path-2.
    pub fn polarizing_split() -> Self {
        // (1,H) ↔ (2,H)
        Self::BeamDisplacer {
            routing: vec![2, 1, 0, 3],
        }
    }
}

/// 2×2 Jones matrix of a half-wave plate with fast axis at `angle_deg`.
pub fn hwp_jones(angle_deg: f64) -> ComplexMatrix {
    let (s, c) = (2.0 * angle_deg.to_radians()).sin_cos();
    ComplexMatrix::from_real_rows(&[&[c, s], &[s, -c]])
}

/// 2×2 Jones matrix of a quarter-wave plate with fast axis at `angle_deg`.
pub fn qwp_jones(angle_deg: f64) -> ComplexMatrix {
    let (s, c) = angle_deg.to_radians().sin_cos();
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let off = (one - i) * s * c;
    ComplexMatrix::from_fn(2, 2, |r, col| match (r, col) {
        (0, 0) => one * c * c + i * s * s,
        (1, 1) => one * s * s + i * c * c,
        _ => off,
    })
}

/// Matrix of `element` on the full path ⊗ polarization space of `n_paths` paths.
pub fn element_matrix(element: &OpticalElement, n_paths: usize) -> Result<ComplexMatrix, OpticsError> {
    let dim = n_paths * POLARIZATION_DIM;
    let check_path = |path: usize| {
        if path >= n_paths {
            Err(OpticsError::PathOutOfRange { path, n_paths })
        } else {
            Ok(())
        }
    };
    match element {
        OpticalElement::HalfWavePlate { angle_deg, paths } => {
            block_diagonal(n_paths, paths, &hwp_jones(*angle_deg), check_path)
        }
        OpticalElement::QuarterWavePlate { angle_deg, paths } => {
            block_diagonal(n_paths, paths, &qwp_jones(*angle_deg), check_path)
        }
        OpticalElement::PhaseShift { phase_deg, path } => {
            check_path(*path)?;
            let phase = Complex64::from_polar(1.0, phase_deg.to_radians());
            let diag: Vec<Complex64> = (0..dim)
                .map(|k| {
                    if k / POLARIZATION_DIM == *path {
                        phase
                    } else {
                        Complex64::new(1.0, 0.0)
                    }
                })
                .collect();
            Ok(ComplexMatrix::diagonal(&diag))
        }
        OpticalElement::BeamDisplacer { routing } => {
            let mut seen = vec![false; dim];
            if routing.len() != dim {
                return Err(OpticsError::InvalidRouting(dim));
            }
            for &target in routing {
                if target >= dim || std::mem::replace(&mut seen[target], true) {
                    return Err(OpticsError::InvalidRouting(dim));
                }
            }
            Ok(ComplexMatrix::from_fn(dim, dim, |i, j| {
                if routing[j] == i {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }))
        }
        OpticalElement::Identity => Ok(ComplexMatrix::identity(dim)),
    }
}

fn block_diagonal(
    n_paths: usize,
    paths: &Paths,
    jones: &ComplexMatrix,
    check_path: impl Fn(usize) -> Result<(), OpticsError>,
) -> Result<ComplexMatrix, OpticsError> {
    if let Paths::Only(list) = paths {
        for &p in list {
            check_path(p)?;
        }
    }
    let dim = n_paths * POLARIZATION_DIM;
    Ok(ComplexMatrix::from_fn(dim, dim, |i, j| {
        let (pi, si) = (i / POLARIZATION_DIM, i % POLARIZATION_DIM);
        let (pj, sj) = (j / POLARIZATION_DIM, j % POLARIZATION_DIM);
        if pi != pj {
            Complex64::new(0.0, 0.0)
        } else if paths.contains(pi) {
            jones.get(si, sj)
        } else if si == sj {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// A named element in a circuit listing.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub label: &'static str,
    pub element: OpticalElement,
}

/// Product of the element matrices, first stage applied first.
pub fn compose(stages: &[Stage], n_paths: usize) -> Result<ComplexMatrix, OpticsError> {
    let mut u = ComplexMatrix::identity(n_paths * POLARIZATION_DIM);
    for stage in stages {
        u = element_matrix(&stage.element, n_paths)?.matmul(&u)?;
    }
    Ok(u)
}

/// Setting of the measurement stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitMode {
    /// Path coherence is transferred to polarization for tomography.
    WaveMeasurement,
    /// Detector states pass through unchanged for discrimination.
    ParticleMeasurement,
}

impl CircuitMode {
    pub fn hwp4_angle_deg(self) -> f64 {
        match self {
            CircuitMode::WaveMeasurement => 0.0,
            CircuitMode::ParticleMeasurement => 45.0,
        }
    }

    /// Extra phase on path-2, if any.
    pub fn phase_deg(self) -> Option<f64> {
        match self {
            CircuitMode::WaveMeasurement => Some(180.0),
            CircuitMode::ParticleMeasurement => None,
        }
    }

    /// Effective two-path element chain of the measurement stage.
    pub fn stages(self) -> Vec<Stage> {
        let hwp4 = Stage {
            label: "HWP4",
            element: OpticalElement::hwp(self.hwp4_angle_deg(), Paths::All),
        };
        let mut stages = vec![
            Stage {
                label: "HWP5/HWP6",
                element: OpticalElement::hwp(45.0, Paths::All),
            },
            Stage {
                label: "BD2 merge",
                element: OpticalElement::path_polarization_exchange(),
            },
            hwp4,
        ];
        match self {
            CircuitMode::WaveMeasurement => {
                let phase = self.phase_deg().unwrap_or(0.0);
                stages.extend([
                    Stage {
                        label: "phase on path-2",
                        element: OpticalElement::PhaseShift {
                            phase_deg: phase,
                            path: 1,
                        },
                    },
                    Stage {
                        label: "recombining HWP",
                        element: OpticalElement::hwp(22.5, Paths::All),
                    },
                    Stage {
                        label: "BD4 split",
                        element: OpticalElement::path_polarization_exchange(),
                    },
                    Stage {
                        label: "output HWP",
                        element: OpticalElement::hwp(-22.5, Paths::All),
                    },
                ]);
            }
            CircuitMode::ParticleMeasurement => {
                stages.extend([
                    Stage {
                        label: "BD4 split",
                        element: OpticalElement::path_polarization_exchange(),
                    },
                    Stage {
                        label: "output HWPs",
                        element: OpticalElement::hwp(45.0, Paths::All),
                    },
                    Stage {
                        label: "output relabel",
                        element: OpticalElement::path_exchange(),
                    },
                ]);
            }
        }
        stages
    }
}

/// Composite unitary of the measurement stage for `mode`.
pub fn composite_unitary(mode: CircuitMode) -> Result<ComplexMatrix, OpticsError> {
    compose(&mode.stages(), 2)
}

/// Preparation stage producing `|Ψ(θ)⟩` from a horizontally polarized photon
/// on path-1.
pub fn preparation_stages(theta: DetectorAngle) -> Vec<Stage> {
    let t = theta.degrees();
    vec![
        Stage {
            label: "HWP1",
            element: OpticalElement::hwp(22.5, Paths::Only(vec![0])),
        },
        Stage {
            label: "BD1",
            element: OpticalElement::polarizing_split(),
        },
        Stage {
            label: "HWP2",
            element: OpticalElement::hwp(45.0 + t / 2.0, Paths::Only(vec![0])),
        },
        Stage {
            label: "HWP3",
            element: OpticalElement::hwp(-t / 2.0, Paths::Only(vec![1])),
        },
    ]
}

/// Detector states `|η₁⟩ = cosθ|H⟩ + sinθ|V⟩`, `|η₂⟩ = cosθ|H⟩ − sinθ|V⟩`.
pub fn detector_states(theta: DetectorAngle) -> (PureState, PureState) {
    let (s, c) = theta.radians().sin_cos();
    (
        PureState::normalized(vec![Complex64::new(c, 0.0), Complex64::new(s, 0.0)]).expect("unit"),
        PureState::normalized(vec![Complex64::new(c, 0.0), Complex64::new(-s, 0.0)]).expect("unit"),
    )
}

/// `(1/√N) Σᵢ |i⟩|ηᵢ⟩` for path kets `|i⟩` and the given detector states.
pub fn which_way_state(detectors: &[PureState]) -> Result<PureState, OpticsError> {
    let n = detectors.len();
    let d = detectors.first().map_or(0, PureState::dim);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n * d];
    let weight = 1.0 / (n as f64).sqrt();
    for (path, eta) in detectors.iter().enumerate() {
        if eta.dim() != d {
            return Err(QmathError::DimensionMismatch {
                expected: d,
                found: eta.dim(),
            }
            .into());
        }
        for (k, a) in eta.amplitudes().iter().enumerate() {
            amplitudes[path * d + k] = a * weight;
        }
    }
    Ok(PureState::normalized(amplitudes)?)
}

/// Joint path–detector state `|Ψ(θ)⟩`.
pub fn joint_state(theta: DetectorAngle) -> PureState {
    let (eta1, eta2) = detector_states(theta);
    which_way_state(&[eta1, eta2]).expect("two qubit detector states")
}

/// Path state after tracing out the detector.
pub fn reduced_path_state(detectors: &[PureState]) -> Result<DensityMatrix, OpticsError> {
    let joint = which_way_state(detectors)?;
    let d = detectors[0].dim();
    Ok(partial_trace(&joint.density(), (detectors.len(), d), Subsystem::First)?)
}

/// Target (path) state `ρ(θ)` obtained by tracing the detector out of `|Ψ(θ)⟩`.
pub fn target_state(theta: DetectorAngle) -> DensityMatrix {
    partial_trace(&joint_state(theta).density(), (2, 2), Subsystem::First).expect("4 = 2 x 2")
}

/// Hadamard gate.
pub fn hadamard() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[FRAC_1_SQRT_2, FRAC_1_SQRT_2], &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]])
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}
