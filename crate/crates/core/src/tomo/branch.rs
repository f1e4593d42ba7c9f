use super::{mle_reconstruct, CountRecord, TomoError};
use crate::optics::hadamard;
use crate::qmath::{DensityMatrix, QmathError};

/// Result of the two-branch reconstruction.
#[derive(Debug, Clone)]
pub struct TwoBranchResult {
    /// Reconstructed path state.
    pub rho: DensityMatrix,
    /// Share of the total counts recorded in each branch.
    pub weights: [f64; 2],
    /// Polarization state recovered in each branch; `None` when the branch
    /// recorded no counts.
    pub branch_states: [Option<DensityMatrix>; 2],
    /// Branches (0-based) skipped for lack of counts.
    pub empty_branches: Vec<usize>,
}

/// Maps a polarization state measured behind the wave-mode circuit back to
/// the path qubit it came from.
///
/// The detector-side Hadamard is undone first, then the polarization qubit is
/// re-encoded into the path eigenbasis through the beam displacers' Hadamard.
/// The two steps cancel for this circuit, but are kept separate so each can be
/// swapped for a non-ideal model.
pub fn path_state_from_branch(polarization: &DensityMatrix) -> Result<DensityMatrix, QmathError> {
    let h = hadamard();
    let undone = polarization.evolve(&h.adjoint())?;
    undone.evolve(&h)
}

/// Count-weighted sum of the two per-branch reconstructions,
/// `ρ = w₁ M(ρ̂₁) + w₂ M(ρ̂₂)` with `wᵢ` the branch share of all counts.
///
/// A branch without counts gets zero weight and is reported in
/// `empty_branches`; both branches empty is an error.
pub fn weighted_two_branch_reconstruct(
    branch1: &[CountRecord],
    branch2: &[CountRecord],
) -> Result<TwoBranchResult, TomoError> {
    let branches = [branch1, branch2];
    let totals = branches.map(|b| b.iter().map(|r| r.counts as f64).sum::<f64>());
    let grand_total = totals[0] + totals[1];
    if grand_total == 0.0 {
        return Err(TomoError::NoCounts);
    }
    let weights = totals.map(|t| t / grand_total);
    let mut branch_states: [Option<DensityMatrix>; 2] = [None, None];
    let mut empty_branches = Vec::new();
    let mut parts = Vec::with_capacity(2);
    let mut part_weights = Vec::with_capacity(2);
    for (k, records) in branches.iter().enumerate() {
        if totals[k] == 0.0 {
            empty_branches.push(k);
            continue;
        }
        let fit = mle_reconstruct(records)?;
        parts.push(path_state_from_branch(&fit.rho_hat)?);
        part_weights.push(weights[k]);
        branch_states[k] = Some(fit.rho_hat);
    }
    let refs: Vec<&DensityMatrix> = parts.iter().collect();
    let rho = DensityMatrix::mixture(&part_weights, &refs)?;
    Ok(TwoBranchResult {
        rho,
        weights,
        branch_states,
        empty_branches,
    })
}

/// Splits records by branch (0 and 1); records on other branches are ignored.
pub fn split_branches(records: &[CountRecord]) -> (Vec<CountRecord>, Vec<CountRecord>) {
    let pick = |b| records.iter().filter(|r| r.branch == b).cloned().collect();
    (pick(0), pick(1))
}
