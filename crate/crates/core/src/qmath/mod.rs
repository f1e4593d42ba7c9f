//! Dense complex linear algebra and quantum-information primitives.
//!
//! Everything here works on small dimensions (a handful of paths times two
//! polarizations), so matrices are plain row-major `Vec`s. Entropies are in
//! bits and use the convention `0·log₂0 = 0`.

mod density;
mod matrix;

pub use density::{DensityMatrix, PureState, Subsystem};
pub use matrix::{tensor, ComplexMatrix};

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

/// Tolerance on Hermiticity and unit trace of density matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as "positive" for a density matrix.
pub const PSD_FLOOR: f64 = -1e-10;
/// Reconstruction tolerance for eigendecompositions.
pub const RECONSTRUCTION_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QmathError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix contains NaN or infinite entries")]
    NonFinite,
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },
    #[error("matrix has negative eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("state vector has squared norm {norm_sqr}, expected 1")]
    NotNormalized { norm_sqr: f64 },
    #[error("zero vector cannot be normalized")]
    ZeroVector,
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    /// Eigenvectors stored as columns, in the same order as `values`.
    pub vectors: ComplexMatrix,
}

impl Eigh {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.rows()).map(|i| self.vectors.get(i, k)).collect()
    }

    /// `V diag(f(λ)) V†`
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = self.vectors.get(i, k) * w;
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + vi * self.vectors.get(j, k).conj());
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|x| x)
    }
}

/// Hermitian eigendecomposition. Rejects inputs that deviate from Hermitian by
/// more than [`RECONSTRUCTION_TOL`].
pub fn eigh(m: &ComplexMatrix) -> Result<Eigh, QmathError> {
    if !m.is_square() {
        return Err(QmathError::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let deviation = m.hermiticity_error();
    if deviation > RECONSTRUCTION_TOL {
        return Err(QmathError::NotHermitian { deviation });
    }
    let n = m.rows();
    let h = m.hermitian_part();
    let dm = DMatrix::from_fn(n, n, |i, j| h.get(i, j));
    let decomposition = dm.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        decomposition.eigenvalues[b]
            .partial_cmp(&decomposition.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&k| decomposition.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| decomposition.eigenvectors[(i, order[j])]);
    Ok(Eigh { values, vectors })
}

/// Shannon entropy in bits of a probability vector. Entries in `[-1e-12, 0)`
/// are treated as zero.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs.iter().map(|&p| if p > 0.0 { -p * p.log2() } else { 0.0 }).sum()
}

/// Binary entropy `h(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    shannon_entropy(&[p, 1.0 - p])
}

/// `S(ρ) = −Tr ρ log₂ ρ`, eigenvalues clamped to `[0, 1]`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let spectrum: Vec<f64> = rho.eigenvalues().iter().map(|&l| l.clamp(0.0, 1.0)).collect();
    shannon_entropy(&spectrum).max(0.0)
}

/// Principal square root of a positive semidefinite matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix, QmathError> {
    Ok(eigh(m)?.map_spectrum(|l| l.max(0.0).sqrt()))
}

/// Uhlmann fidelity `(Tr √(√a b √a))²`.
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64, QmathError> {
    if a.dim() != b.dim() {
        return Err(QmathError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let sa = psd_sqrt(a.matrix())?;
    let inner = sa.conjugate(b.matrix())?;
    let root_trace: f64 = eigh(&inner.hermitian_part())?
        .values
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .sum();
    Ok((root_trace * root_trace).clamp(0.0, 1.0))
}

/// Reduced state of one factor of a bipartite system with dimensions `dims`.
pub fn partial_trace(
    state: &DensityMatrix,
    dims: (usize, usize),
    keep: Subsystem,
) -> Result<DensityMatrix, QmathError> {
    let (da, db) = dims;
    if da * db != state.dim() {
        return Err(QmathError::DimensionMismatch {
            expected: state.dim(),
            found: da * db,
        });
    }
    let m = state.matrix();
    let reduced = match keep {
        Subsystem::First => ComplexMatrix::from_fn(da, da, |i, j| (0..db).map(|k| m.get(i * db + k, j * db + k)).sum()),
        Subsystem::Second => {
            ComplexMatrix::from_fn(db, db, |i, j| (0..da).map(|k| m.get(k * db + i, k * db + j)).sum())
        }
    };
    DensityMatrix::new(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn rho_theta(deg: f64) -> DensityMatrix {
        let off = 0.5 * (2.0 * deg.to_radians()).cos();
        DensityMatrix::new(ComplexMatrix::from_real_rows(&[&[0.5, off], &[off, 0.5]])).unwrap()
    }

    /// |Ψ(θ)⟩ built directly from its amplitudes, path-major.
    fn psi_theta(deg: f64) -> PureState {
        let (s, co) = deg.to_radians().sin_cos();
        PureState::new(vec![
            c(FRAC_1_SQRT_2 * co),
            c(FRAC_1_SQRT_2 * s),
            c(FRAC_1_SQRT_2 * co),
            c(-FRAC_1_SQRT_2 * s),
        ])
        .unwrap()
    }

    #[test]
    fn partial_trace_of_joint_state() {
        let r0 = partial_trace(&psi_theta(0.0).density(), (2, 2), Subsystem::First).unwrap();
        for z in r0.matrix().entries() {
            assert!((z - c(0.5)).norm() < 1e-12);
        }
        let r45 = partial_trace(&psi_theta(45.0).density(), (2, 2), Subsystem::First).unwrap();
        assert!(
            r45.matrix()
                .max_abs_diff(&DensityMatrix::maximally_mixed(2).matrix().clone())
                < 1e-12
        );
    }

    #[test]
    fn partial_trace_at_30_degrees_matches_index_sum() {
        // Independent route: explicit outer product and index summation.
        let amps = psi_theta(30.0).amplitudes().to_vec();
        let mut off = Complex64::new(0.0, 0.0);
        for pol in 0..2 {
            off += amps[pol] * amps[2 + pol].conj();
        }
        assert!((off.re - 0.25).abs() < 1e-12);
        let r = partial_trace(&psi_theta(30.0).density(), (2, 2), Subsystem::First).unwrap();
        assert!((r.matrix().get(0, 1) - off).norm() < 1e-12);
        assert!((r.matrix().get(1, 0).re - 0.25).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            partial_trace(&rho, (3, 2), Subsystem::First),
            Err(QmathError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn eigh_closed_forms() {
        let e = eigh(DensityMatrix::maximally_mixed(2).matrix()).unwrap();
        assert!((e.values[0] - 0.5).abs() < 1e-15 && (e.values[1] - 0.5).abs() < 1e-15);
        let e30 = eigh(rho_theta(30.0).matrix()).unwrap();
        assert!((e30.values[0] - 0.75).abs() < 1e-12);
        assert!((e30.values[1] - 0.25).abs() < 1e-12);
        for deg in [0.0, 10.0, 22.5, 40.0, 45.0] {
            let e = eigh(rho_theta(deg).matrix()).unwrap();
            let (s, co) = deg.to_radians().sin_cos();
            assert!((e.values[0] - co * co).abs() < 1e-12);
            assert!((e.values[1] - s * s).abs() < 1e-12);
        }
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(eigh(&m), Err(QmathError::NotHermitian { .. })));
    }

    #[test]
    fn entropy_values() {
        assert!((von_neumann_entropy(&DensityMatrix::maximally_mixed(2)) - 1.0).abs() < 1e-12);
        assert!(von_neumann_entropy(&psi_theta(17.0).density()).abs() < 1e-12);
        // h(0.75) by the scalar formula
        let h = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
        assert!((h - 0.811278).abs() < 1e-6);
        assert!((von_neumann_entropy(&rho_theta(30.0)) - h).abs() < 1e-12);
    }

    #[test]
    fn fidelity_values() {
        let h = PureState::basis(2, 0).density();
        let v = PureState::basis(2, 1).density();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((fidelity(&mixed, &mixed).unwrap() - 1.0).abs() < 1e-10);
        assert!(fidelity(&h, &v).unwrap().abs() < 1e-12);
        assert!((fidelity(&h, &mixed).unwrap() - 0.5).abs() < 1e-12);
        assert!((fidelity(&mixed, &h).unwrap() - 0.5).abs() < 1e-12);
        assert!(fidelity(&h, &DensityMatrix::maximally_mixed(4)).is_err());
    }

    #[test]
    fn zero_log_zero_is_zero() {
        assert_eq!(shannon_entropy(&[1.0, 0.0]), 0.0);
        assert_eq!(binary_entropy(0.0), 0.0);
        assert!((binary_entropy(0.5) - 1.0).abs() < 1e-15);
    }
}
