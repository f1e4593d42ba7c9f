//! Coherence quantifiers of the path state: relative-entropy coherence and
//! the l1-norm coherence together with its normalized form `X = C_l1 / N`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qmath::{von_neumann_entropy, DensityMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoherenceError {
    #[error("state has dimension {found} but {expected} paths were given")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    /// `S(ρ_diag) − S(ρ)` in bits.
    pub c_relent: f64,
    pub c_l1: f64,
    /// `C_l1 / N`
    pub x: f64,
    pub n_paths: usize,
}

/// `C(ρ) = S(ρ_diag) − S(ρ)`, computed from eigenvalues.
pub fn relent_coherence(rho: &DensityMatrix) -> f64 {
    (von_neumann_entropy(&rho.dephased()) - von_neumann_entropy(rho)).max(0.0)
}

/// `C_l1(ρ) = Σ_{i≠j} |ρ_ij|`
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    let n = rho.dim();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                total += rho.get(i, j).norm();
            }
        }
    }
    total
}

pub fn coherence_report(rho: &DensityMatrix, n_paths: usize) -> Result<CoherenceReport, CoherenceError> {
    if rho.dim() != n_paths {
        return Err(CoherenceError::DimensionMismatch {
            expected: n_paths,
            found: rho.dim(),
        });
    }
    let c_l1 = l1_coherence(rho);
    Ok(CoherenceReport {
        c_relent: relent_coherence(rho),
        c_l1,
        x: c_l1 / n_paths as f64,
        n_paths,
    })
}
