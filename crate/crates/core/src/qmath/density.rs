use num_complex::Complex64;

use super::{eigh, ComplexMatrix, QmathError, HERMITIAN_TOL, PSD_FLOOR};

/// Selects which factor of a bipartite system to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, QmathError> {
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QmathError::NonFinite);
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > HERMITIAN_TOL {
            return Err(QmathError::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self, QmathError> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(QmathError::ZeroVector);
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect())
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self, QmathError> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis ket `|index⟩` of dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Self { amplitudes }
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::new(self.projector()).expect("projector of a normalized ket is a state")
    }

    /// Applies a unitary; the result is renormalized to absorb rounding.
    pub fn evolve(&self, unitary: &ComplexMatrix) -> Result<Self, QmathError> {
        Self::normalized(unitary.apply(&self.amplitudes)?)
    }
}

/// Unit-trace positive semidefinite Hermitian matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    spectrum: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, QmathError> {
        if !matrix.is_square() {
            return Err(QmathError::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        let deviation = matrix.hermiticity_error();
        if deviation > HERMITIAN_TOL {
            return Err(QmathError::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > HERMITIAN_TOL {
            return Err(QmathError::NotUnitTrace { trace });
        }
        let matrix = matrix.hermitian_part();
        let spectrum = eigh(&matrix)?.values;
        let min_eigenvalue = spectrum.last().copied().unwrap_or(0.0);
        if min_eigenvalue < PSD_FLOOR {
            return Err(QmathError::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix, spectrum })
    }

    /// Symmetrizes and divides by the trace before validating. For operators
    /// that are positive by construction but carry rounding noise.
    pub fn from_unnormalized(matrix: &ComplexMatrix) -> Result<Self, QmathError> {
        let h = matrix.hermitian_part();
        let trace = h.trace().re;
        if trace <= 0.0 || !trace.is_finite() {
            return Err(QmathError::NotUnitTrace { trace });
        }
        Self::new(h.scale_real(1.0 / trace))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::new(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64)).expect("I/d is a state")
    }

    /// Diagonal state with the given populations.
    pub fn diagonal(populations: &[f64]) -> Result<Self, QmathError> {
        let values: Vec<Complex64> = populations.iter().map(|&p| Complex64::new(p, 0.0)).collect();
        Self::new(ComplexMatrix::diagonal(&values))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix.get(i, j)
    }

    /// Populations `ρ_ii`.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix.get(i, i).re).collect()
    }

    /// The dephased state `ρ_diag`.
    pub fn dephased(&self) -> Self {
        let pops: Vec<f64> = self.populations().iter().map(|p| p.max(0.0)).collect();
        let total: f64 = pops.iter().sum();
        Self::diagonal(&pops.iter().map(|p| p / total).collect::<Vec<_>>()).expect("normalized non-negative diagonal")
    }

    /// `Tr(Πρ)` for an operator `Π`, real part.
    pub fn expectation(&self, operator: &ComplexMatrix) -> Result<f64, QmathError> {
        Ok(operator.trace_product(&self.matrix)?.re)
    }

    /// `UρU†`
    pub fn evolve(&self, unitary: &ComplexMatrix) -> Result<Self, QmathError> {
        Self::from_unnormalized(&unitary.conjugate(&self.matrix)?)
    }

    /// Convex combination `Σ wᵢ ρᵢ`. Weights must be non-negative and sum to 1.
    pub fn mixture(weights: &[f64], states: &[&DensityMatrix]) -> Result<Self, QmathError> {
        let first = states
            .first()
            .ok_or(QmathError::DimensionMismatch { expected: 1, found: 0 })?;
        let mut acc = ComplexMatrix::zeros(first.dim(), first.dim());
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != first.dim() {
                return Err(QmathError::DimensionMismatch {
                    expected: first.dim(),
                    found: s.dim(),
                });
            }
            acc = &acc + &s.matrix.scale_real(*w);
        }
        Self::new(acc)
    }
}
