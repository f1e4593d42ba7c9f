use num_complex::Complex64;

use super::{CountRecord, TomoError};
use crate::qmath::{eigh, ComplexMatrix, DensityMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MleOptions {
    pub max_iterations: usize,
    /// Stop once no entry of ρ changes by more than this.
    pub tolerance: f64,
    /// Keep the log-likelihood of every accepted iterate.
    pub track_history: bool,
}

impl Default for MleOptions {
    fn default() -> Self {
        Self {
            max_iterations: 10_000,
            tolerance: 1e-10,
            track_history: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TomoResult {
    pub rho_hat: DensityMatrix,
    pub log_likelihood: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Log-likelihood per iteration, starting with the initial state. Empty
    /// unless requested through [`MleOptions::track_history`].
    pub history: Vec<f64>,
}

/// Maximum-likelihood state from count records with default options.
pub fn mle_reconstruct(records: &[CountRecord]) -> Result<TomoResult, TomoError> {
    mle_reconstruct_with(records, &MleOptions::default())
}

struct Problem {
    projectors: Vec<ComplexMatrix>,
    counts: Vec<f64>,
    exposures: Vec<f64>,
    total: f64,
    /// `(Σ tₖΠₖ)^{-1}`
    metric_inverse: ComplexMatrix,
    dim: usize,
}

impl Problem {
    fn probabilities(&self, rho: &ComplexMatrix) -> Vec<f64> {
        self.projectors
            .iter()
            .map(|p| p.trace_product(rho).map(|z| z.re.max(0.0)).unwrap_or(0.0))
            .collect()
    }

    /// Poisson log-likelihood with the flux profiled out, up to a constant.
    fn log_likelihood(&self, probs: &[f64]) -> f64 {
        let mut expected_total = 0.0;
        let mut value = 0.0;
        for ((p, n), t) in probs.iter().zip(&self.counts).zip(&self.exposures) {
            let q = t * p;
            expected_total += q;
            if *n > 0.0 {
                value += n * q.max(f64::MIN_POSITIVE).ln();
            }
        }
        value - self.total * expected_total.ln()
    }

    /// `A = (S/N) G⁻¹ Σₖ (nₖ/pₖ) Πₖ`; `A = I` at an interior maximum.
    fn ascent_operator(&self, probs: &[f64]) -> ComplexMatrix {
        let mut r = ComplexMatrix::zeros(self.dim, self.dim);
        let mut expected_total = 0.0;
        for (((pi, p), n), t) in self.projectors.iter().zip(probs).zip(&self.counts).zip(&self.exposures) {
            expected_total += t * p;
            if *n > 0.0 {
                r = &r + &pi.scale_real(n / p.max(f64::MIN_POSITIVE));
            }
        }
        (&self.metric_inverse * &r).scale_real(expected_total / self.total)
    }
}

fn normalized_step(a: &ComplexMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
    let next = a.conjugate(rho).expect("square").hermitian_part();
    let trace = next.trace().re;
    next.scale_real(1.0 / trace)
}

/// Real coordinates of a Hermitian operator in the basis of diagonal units and
/// symmetric / antisymmetric off-diagonal pairs.
fn hermitian_coordinates(m: &ComplexMatrix) -> Vec<f64> {
    let d = m.rows();
    let mut v = Vec::with_capacity(d * d);
    for i in 0..d {
        v.push(m.get(i, i).re);
        for j in i + 1..d {
            v.push(m.get(i, j).re);
            v.push(m.get(i, j).im);
        }
    }
    v
}

fn operator_span_rank(projectors: &[ComplexMatrix]) -> Result<usize, TomoError> {
    let coords: Vec<Vec<f64>> = projectors.iter().map(hermitian_coordinates).collect();
    let n = coords.first().map_or(0, Vec::len);
    let gram = ComplexMatrix::from_fn(n, n, |a, b| {
        Complex64::new(coords.iter().map(|v| v[a] * v[b]).sum(), 0.0)
    });
    let values = eigh(&gram)?.values;
    let scale = values.first().copied().unwrap_or(0.0).max(f64::MIN_POSITIVE);
    Ok(values.iter().filter(|&&l| l > 1e-10 * scale).count())
}

/// Iterative maximum likelihood (RρR with dilution), starting from the
/// maximally mixed state.
///
/// Each iteration tries the full `ρ → AρA†` update and falls back to the
/// diluted operator `(I + εA)/(1 + ε)` with halving `ε` whenever the
/// likelihood would drop, so accepted iterates never lose likelihood.
pub fn mle_reconstruct_with(records: &[CountRecord], options: &MleOptions) -> Result<TomoResult, TomoError> {
    let first = records.first().ok_or(TomoError::NoRecords)?;
    let dim = first.projector.rows();
    for r in records {
        if r.projector.rows() != dim || !r.projector.is_square() {
            return Err(TomoError::EmbeddingMismatch {
                projector: r.projector.rows(),
                state: dim,
                branch: r.branch,
            });
        }
        if r.exposure <= 0.0 || !r.exposure.is_finite() {
            return Err(TomoError::InvalidExposure(r.exposure));
        }
    }
    let projectors: Vec<ComplexMatrix> = records.iter().map(|r| r.projector.clone()).collect();
    let rank = operator_span_rank(&projectors)?;
    if rank < dim * dim {
        return Err(TomoError::InformationallyIncomplete {
            rank,
            needed: dim * dim,
        });
    }
    let counts: Vec<f64> = records.iter().map(|r| r.counts as f64).collect();
    let total: f64 = counts.iter().sum();
    if total == 0.0 {
        return Err(TomoError::NoCounts);
    }
    let exposures: Vec<f64> = records.iter().map(|r| r.exposure).collect();
    let mut metric = ComplexMatrix::zeros(dim, dim);
    for (p, t) in projectors.iter().zip(&exposures) {
        metric = &metric + &p.scale_real(*t);
    }
    let metric_inverse = eigh(&metric)?.map_spectrum(|l| 1.0 / l);
    let problem = Problem {
        projectors,
        counts,
        exposures,
        total,
        metric_inverse,
        dim,
    };

    let identity = ComplexMatrix::identity(dim);
    let mut rho = identity.scale_real(1.0 / dim as f64);
    let mut probs = problem.probabilities(&rho);
    let mut likelihood = problem.log_likelihood(&probs);
    let mut history = Vec::new();
    if options.track_history {
        history.push(likelihood);
    }
    let mut converged = false;
    let mut iterations = 0;

    while iterations < options.max_iterations {
        iterations += 1;
        let a = problem.ascent_operator(&probs);
        let mut accepted = None;
        let mut candidate = normalized_step(&a, &rho);
        let mut epsilon = 1.0;
        loop {
            let cand_probs = problem.probabilities(&candidate);
            let cand_likelihood = problem.log_likelihood(&cand_probs);
            if cand_likelihood >= likelihood {
                accepted = Some((candidate, cand_probs, cand_likelihood));
                break;
            }
            if epsilon < 1e-8 {
                break;
            }
            let diluted = (&identity + &a.scale_real(epsilon)).scale_real(1.0 / (1.0 + epsilon));
            candidate = normalized_step(&diluted, &rho);
            epsilon *= 0.5;
        }
        let Some((next, next_probs, next_likelihood)) = accepted else {
            // no ascent left at double precision
            converged = true;
            break;
        };
        let change = next.max_abs_diff(&rho);
        rho = next;
        probs = next_probs;
        likelihood = next_likelihood;
        if options.track_history {
            history.push(likelihood);
        }
        if change < options.tolerance {
            converged = true;
            break;
        }
    }

    Ok(TomoResult {
        rho_hat: DensityMatrix::from_unnormalized(&rho)?,
        log_likelihood: likelihood,
        iterations,
        converged,
        history,
    })
}
