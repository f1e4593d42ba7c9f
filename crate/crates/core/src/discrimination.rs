//! Minimum-error discrimination of detector states.
//!
//! The particle side of the duality relations: the success probability of the
//! optimal (Helstrom) measurement, the joint distribution of state label `D`
//! and outcome `M`, and the mutual information `H(M:D)` read off that joint
//! table. For more than two paths the square-root ("pretty good") measurement
//! stands in for the optimum.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qmath::{eigh, shannon_entropy, ComplexMatrix, PureState, QmathError, PSD_FLOOR};

/// Tolerance on `Σ Πᵢ = I`.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Joint-table entries in `[−JOINT_CLAMP, 0)` are rounding noise.
pub const JOINT_CLAMP: f64 = 1e-12;
/// Below this max-entry norm the Helstrom operator counts as zero.
const DEGENERACY_TOL: f64 = 1e-13;
/// Eigenvalues of the ensemble average below this are outside its support.
const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiscriminationError {
    #[error("POVM element {index} is not positive (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { index: usize, min_eigenvalue: f64 },
    #[error("POVM elements sum to identity only within {deviation:e}")]
    Incomplete { deviation: f64 },
    #[error("priors must be non-negative and sum to 1 (sum = {sum})")]
    InvalidPriors { sum: f64 },
    #[error("{states} states but {priors} priors / {elements} POVM elements")]
    CountMismatch {
        states: usize,
        priors: usize,
        elements: usize,
    },
    #[error("need at least two states, got {0}")]
    TooFewStates(usize),
    #[error("invalid joint distribution: {0}")]
    InvalidJoint(String),
    #[error(transparent)]
    Qmath(#[from] QmathError),
}

/// Why a POVM is not the textbook construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PovmFlag {
    /// Helstrom operator vanished (identical states, equal priors); a fixed
    /// projective pair was returned.
    Degenerate,
    /// Ensemble average was rank deficient; its pseudo-inverse was used and the
    /// kernel projector folded into the first element.
    SingularEnsemble,
}

#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
    labels: Vec<String>,
    flag: Option<PovmFlag>,
}

impl Povm {
    pub fn new(elements: Vec<ComplexMatrix>, labels: Vec<String>) -> Result<Self, DiscriminationError> {
        let dim = elements.first().map_or(0, ComplexMatrix::rows);
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for (index, e) in elements.iter().enumerate() {
            let min_eigenvalue = eigh(e)?.values.last().copied().unwrap_or(0.0);
            if min_eigenvalue < PSD_FLOOR {
                return Err(DiscriminationError::NotPositive { index, min_eigenvalue });
            }
            sum = &sum + e;
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if deviation > COMPLETENESS_TOL {
            return Err(DiscriminationError::Incomplete { deviation });
        }
        Ok(Self {
            elements,
            labels,
            flag: None,
        })
    }

    fn flagged(mut self, flag: PovmFlag) -> Self {
        self.flag = Some(flag);
        self
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn flag(&self) -> Option<PovmFlag> {
        self.flag
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Projective measurement onto an orthonormal basis given as kets.
    pub fn projective(basis: &[PureState]) -> Result<Self, DiscriminationError> {
        let elements = basis.iter().map(PureState::projector).collect();
        let labels = (1..=basis.len()).map(|i| format!("M={i}")).collect();
        Self::new(elements, labels)
    }
}

fn check_priors(priors: &[f64]) -> Result<(), DiscriminationError> {
    let sum: f64 = priors.iter().sum();
    if priors.iter().any(|&p| p.is_nan() || p < 0.0) || (sum - 1.0).abs() > 1e-12 {
        return Err(DiscriminationError::InvalidPriors { sum });
    }
    Ok(())
}

/// `|φ₁⟩ = (|H⟩+|V⟩)/√2`, `|φ₂⟩ = (|H⟩−|V⟩)/√2`.
pub fn diagonal_basis() -> [PureState; 2] {
    [
        PureState::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).expect("unit"),
        PureState::from_real(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]).expect("unit"),
    ]
}

/// Helstrom measurement for two pure states: projectors onto the non-negative
/// and negative eigenspaces of `p₁ρ₁ − p₂ρ₂`.
pub fn helstrom_povm(eta1: &PureState, eta2: &PureState, priors: (f64, f64)) -> Result<Povm, DiscriminationError> {
    if eta1.dim() != eta2.dim() {
        return Err(QmathError::DimensionMismatch {
            expected: eta1.dim(),
            found: eta2.dim(),
        }
        .into());
    }
    check_priors(&[priors.0, priors.1])?;
    let dim = eta1.dim();
    let gamma = &eta1.projector().scale_real(priors.0) - &eta2.projector().scale_real(priors.1);
    let labels = vec!["M=1".to_string(), "M=2".to_string()];

    if gamma.max_abs() < DEGENERACY_TOL {
        let povm = if dim == 2 {
            let [plus, minus] = diagonal_basis();
            Povm::new(vec![plus.projector(), minus.projector()], labels)?
        } else {
            Povm::new(
                vec![ComplexMatrix::identity(dim), ComplexMatrix::zeros(dim, dim)],
                labels,
            )?
        };
        return Ok(povm.flagged(PovmFlag::Degenerate));
    }

    let spectrum = eigh(&gamma)?;
    let negative = spectrum.map_spectrum(|l| if l < 0.0 { 1.0 } else { 0.0 });
    let positive = &ComplexMatrix::identity(dim) - &negative;
    Povm::new(vec![positive, negative], labels)
}

/// `P_s = Σᵢ pᵢ ⟨ηᵢ|Πᵢ|ηᵢ⟩`
pub fn success_probability(povm: &Povm, states: &[PureState], priors: &[f64]) -> Result<f64, DiscriminationError> {
    check_counts(povm, states, priors)?;
    let mut total = 0.0;
    for ((pi, eta), p) in povm.elements().iter().zip(states).zip(priors) {
        total += p * expectation(pi, eta)?;
    }
    Ok(total.clamp(0.0, 1.0))
}

fn expectation(op: &ComplexMatrix, ket: &PureState) -> Result<f64, DiscriminationError> {
    let image = op.apply(ket.amplitudes())?;
    Ok(ket
        .amplitudes()
        .iter()
        .zip(&image)
        .map(|(a, b)| a.conj() * b)
        .sum::<num_complex::Complex64>()
        .re)
}

fn check_counts(povm: &Povm, states: &[PureState], priors: &[f64]) -> Result<(), DiscriminationError> {
    if states.len() != priors.len() || povm.len() != states.len() {
        return Err(DiscriminationError::CountMismatch {
            states: states.len(),
            priors: priors.len(),
            elements: povm.len(),
        });
    }
    check_priors(priors)
}

/// Joint distribution `p_ij = p(M=i, D=j)`; rows are outcomes, columns states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointTable {
    entries: Vec<Vec<f64>>,
}

impl JointTable {
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self, DiscriminationError> {
        let cols = entries.first().map_or(0, Vec::len);
        let mut entries = entries;
        let mut sum = 0.0;
        for row in &mut entries {
            if row.len() != cols {
                return Err(DiscriminationError::InvalidJoint("ragged table".into()));
            }
            for p in row.iter_mut() {
                if !p.is_finite() || *p < -JOINT_CLAMP {
                    return Err(DiscriminationError::InvalidJoint(format!("entry {p}")));
                }
                *p = p.max(0.0);
                sum += *p;
            }
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(DiscriminationError::InvalidJoint(format!("entries sum to {sum}")));
        }
        Ok(Self { entries })
    }

    /// Normalized table from raw counts `counts[outcome][state]`.
    pub fn from_counts(counts: &[Vec<u64>]) -> Result<Self, DiscriminationError> {
        let total: u64 = counts.iter().flatten().sum();
        if total == 0 {
            return Err(DiscriminationError::InvalidJoint("no counts".into()));
        }
        Self::new(
            counts
                .iter()
                .map(|row| row.iter().map(|&n| n as f64 / total as f64).collect())
                .collect(),
        )
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn get(&self, outcome: usize, state: usize) -> f64 {
        self.entries[outcome][state]
    }

    /// Distribution of the state label `D` (column sums).
    pub fn state_marginal(&self) -> Vec<f64> {
        let cols = self.entries.first().map_or(0, Vec::len);
        (0..cols).map(|j| self.entries.iter().map(|r| r[j]).sum()).collect()
    }

    /// Distribution of the outcome `M` (row sums).
    pub fn outcome_marginal(&self) -> Vec<f64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    /// Probability that the outcome names the state correctly, `Σᵢ p_ii`.
    pub fn success_probability(&self) -> f64 {
        (0..self.entries.len().min(self.state_marginal().len()))
            .map(|i| self.entries[i][i])
            .sum()
    }

    pub fn joint_entropy(&self) -> f64 {
        shannon_entropy(&self.entries.iter().flatten().copied().collect::<Vec<_>>())
    }
}

/// `p_ij = Tr(Πᵢ ρⱼ) pⱼ` with `ρⱼ = |ηⱼ⟩⟨ηⱼ|`.
pub fn joint_distribution(
    povm: &Povm,
    states: &[PureState],
    priors: &[f64],
) -> Result<JointTable, DiscriminationError> {
    check_counts(povm, states, priors)?;
    let mut entries = Vec::with_capacity(povm.len());
    for pi in povm.elements() {
        let mut row = Vec::with_capacity(states.len());
        for (eta, p) in states.iter().zip(priors) {
            row.push(expectation(pi, eta)? * p);
        }
        entries.push(row);
    }
    // absorb trace rounding so the table sums to one
    let total: f64 = entries.iter().flatten().sum();
    for p in entries.iter_mut().flatten() {
        *p /= total;
    }
    JointTable::new(entries)
}

/// `H(M:D) = H(D) + H(M) − H(p_ij)` in bits.
pub fn mutual_information(joint: &JointTable) -> f64 {
    let value =
        shannon_entropy(&joint.state_marginal()) + shannon_entropy(&joint.outcome_marginal()) - joint.joint_entropy();
    value.max(0.0)
}

/// Square-root measurement `Πᵢ = ρ̄^{-1/2} pᵢρᵢ ρ̄^{-1/2}` with `ρ̄ = Σ pᵢρᵢ`.
pub fn pretty_good_povm(states: &[PureState], priors: &[f64]) -> Result<Povm, DiscriminationError> {
    if states.len() < 2 {
        return Err(DiscriminationError::TooFewStates(states.len()));
    }
    if states.len() != priors.len() {
        return Err(DiscriminationError::CountMismatch {
            states: states.len(),
            priors: priors.len(),
            elements: 0,
        });
    }
    check_priors(priors)?;
    let dim = states[0].dim();
    let mut average = ComplexMatrix::zeros(dim, dim);
    for (s, p) in states.iter().zip(priors) {
        if s.dim() != dim {
            return Err(QmathError::DimensionMismatch {
                expected: dim,
                found: s.dim(),
            }
            .into());
        }
        average = &average + &s.projector().scale_real(*p);
    }
    let spectrum = eigh(&average)?;
    let inv_sqrt = spectrum.map_spectrum(|l| if l > SUPPORT_TOL { 1.0 / l.sqrt() } else { 0.0 });
    let kernel = spectrum.map_spectrum(|l| if l > SUPPORT_TOL { 0.0 } else { 1.0 });
    let singular = kernel.trace().re > 0.5;

    let mut elements: Vec<ComplexMatrix> = states
        .iter()
        .zip(priors)
        .map(|(s, p)| {
            inv_sqrt
                .conjugate(&s.projector().scale_real(*p))
                .map(|m| m.hermitian_part())
        })
        .collect::<Result<_, _>>()?;
    if singular {
        elements[0] = &elements[0] + &kernel;
    }
    let labels = (1..=states.len()).map(|i| format!("M={i}")).collect();
    let povm = Povm::new(elements, labels)?;
    Ok(if singular {
        povm.flagged(PovmFlag::SingularEnsemble)
    } else {
        povm
    })
}

/// Everything the particle side reports for one ensemble and measurement.
#[derive(Debug, Clone)]
pub struct DiscriminationResult {
    pub povm: Povm,
    pub p_success: f64,
    pub joint: JointTable,
    pub h_d: f64,
    pub h_m: f64,
    pub mutual_info: f64,
}

/// Discriminates `states` with the Helstrom measurement (two states) or the
/// square-root measurement (more than two).
pub fn discriminate(states: &[PureState], priors: &[f64]) -> Result<DiscriminationResult, DiscriminationError> {
    let povm = match states {
        [a, b] => helstrom_povm(
            a,
            b,
            (
                priors.first().copied().unwrap_or(0.0),
                priors.get(1).copied().unwrap_or(0.0),
            ),
        )?,
        _ => pretty_good_povm(states, priors)?,
    };
    let p_success = success_probability(&povm, states, priors)?;
    let joint = joint_distribution(&povm, states, priors)?;
    Ok(DiscriminationResult {
        p_success,
        h_d: shannon_entropy(&joint.state_marginal()),
        h_m: shannon_entropy(&joint.outcome_marginal()),
        mutual_info: mutual_information(&joint),
        joint,
        povm,
    })
}

/// `N` states with real pairwise overlap `overlap` (Gram matrix
/// `(1−c)I + cJ`), realized in an `N`-dimensional space.
pub fn symmetric_ensemble(n: usize, overlap: f64) -> Result<Vec<PureState>, DiscriminationError> {
    if n < 2 {
        return Err(DiscriminationError::TooFewStates(n));
    }
    let gram = ComplexMatrix::from_fn(n, n, |i, j| {
        num_complex::Complex64::new(if i == j { 1.0 } else { overlap }, 0.0)
    });
    let spectrum = eigh(&gram)?;
    if spectrum.values.last().copied().unwrap_or(0.0) < -1e-12 {
        return Err(DiscriminationError::InvalidJoint(format!(
            "overlap {overlap} gives no valid Gram matrix for {n} states"
        )));
    }
    let root = spectrum.map_spectrum(|l| l.max(0.0).sqrt());
    (0..n)
        .map(|k| Ok(PureState::normalized((0..n).map(|i| root.get(i, k)).collect())?))
        .collect()
}
