use std::fmt::Display;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{poisson_sample, CountRecord, TomoError};
use crate::rng::substream;

/// Bootstrap mean and spread of a derived quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation (n − 1 denominator).
    pub std_dev: f64,
    pub samples: usize,
}

impl McEstimate {
    fn from_samples(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Self {
            mean,
            std_dev: var.max(0.0).sqrt(),
            samples: values.len(),
        }
    }
}

/// Resample `i`: every count redrawn as Poisson(observed), record `j` from
/// substream `(seed, j, i)`.
pub fn resample_counts(records: &[CountRecord], seed: u64, sample: u64) -> Vec<CountRecord> {
    records
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let mut rng = substream(seed, j as u64, sample);
            r.with_counts(poisson_sample(&mut rng, r.counts as f64))
        })
        .collect()
}

/// Parametric bootstrap of a scalar pipeline.
pub fn monte_carlo_error<F, E>(
    pipeline: F,
    records: &[CountRecord],
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate, TomoError>
where
    F: Fn(&[CountRecord]) -> Result<f64, E> + Sync,
    E: Display,
{
    let mut out = monte_carlo_errors(|r| pipeline(r).map(|v| vec![v]), records, n_samples, seed)?;
    Ok(out.remove(0))
}

/// Parametric bootstrap of a pipeline yielding several quantities at once;
/// one estimate per quantity. Samples run in parallel but are reduced in
/// sample order, so results do not depend on the thread count.
pub fn monte_carlo_errors<F, E>(
    pipeline: F,
    records: &[CountRecord],
    n_samples: usize,
    seed: u64,
) -> Result<Vec<McEstimate>, TomoError>
where
    F: Fn(&[CountRecord]) -> Result<Vec<f64>, E> + Sync,
    E: Display,
{
    if n_samples < 2 {
        return Err(TomoError::TooFewSamples(n_samples));
    }
    let runs: Vec<Result<Vec<f64>, TomoError>> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let resampled = resample_counts(records, seed, i as u64);
            pipeline(&resampled).map_err(|e| TomoError::Pipeline {
                sample: i,
                message: e.to_string(),
            })
        })
        .collect();
    let runs = runs.into_iter().collect::<Result<Vec<_>, _>>()?;
    let width = runs[0].len();
    if let Some((i, _)) = runs.iter().enumerate().find(|(_, r)| r.len() != width) {
        return Err(TomoError::Pipeline {
            sample: i,
            message: format!("pipeline returned {} values, expected {width}", runs[i].len()),
        });
    }
    Ok((0..width)
        .map(|k| {
            let column: Vec<f64> = runs.iter().map(|r| r[k]).collect();
            McEstimate::from_samples(&column)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::{target_state, DetectorAngle};
    use crate::qmath::DensityMatrix;
    use crate::tomo::{mle_reconstruct, pauli_settings, simulate_counts};

    fn records(exposure: f64, seed: u64) -> Vec<CountRecord> {
        let rho = target_state(DetectorAngle::new(30.0).unwrap());
        simulate_counts(&rho, &pauli_settings(0), 5e3, exposure, seed).unwrap()
    }

    fn off_diagonal(rs: &[CountRecord]) -> Result<f64, TomoError> {
        Ok(mle_reconstruct(rs)?.rho_hat.get(0, 1).re)
    }

    #[test]
    fn constant_pipeline_has_no_spread() {
        let est = monte_carlo_error(|_| Ok::<_, TomoError>(0.25), &records(1.0, 0), 10, 0).unwrap();
        assert_eq!(
            est,
            McEstimate {
                mean: 0.25,
                std_dev: 0.0,
                samples: 10
            }
        );
    }

    #[test]
    fn deterministic_per_seed() {
        let rs = records(1.0, 0);
        let a = monte_carlo_error(off_diagonal, &rs, 20, 5).unwrap();
        let b = monte_carlo_error(off_diagonal, &rs, 20, 5).unwrap();
        assert_eq!(a, b);
        let c = monte_carlo_error(off_diagonal, &rs, 20, 6).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            monte_carlo_error(off_diagonal, &records(1.0, 0), 1, 0),
            Err(TomoError::TooFewSamples(1))
        ));
    }

    #[test]
    fn failure_reports_sample_index() {
        let err = monte_carlo_error(|_| Err::<f64, _>("boom"), &records(1.0, 0), 4, 0).unwrap_err();
        assert_eq!(
            err,
            TomoError::Pipeline {
                sample: 0,
                message: "boom".into()
            }
        );
    }

    #[test]
    fn mixed_state_entries_within_band() {
        let mixed = DensityMatrix::maximally_mixed(2);
        let rs = simulate_counts(&mixed, &pauli_settings(0), 5e3, 10.0, 11).unwrap();
        let entries = |r: &[CountRecord]| -> Result<Vec<f64>, TomoError> {
            let rho = mle_reconstruct(r)?.rho_hat;
            Ok(vec![rho.get(0, 0).re, rho.get(0, 1).re, rho.get(0, 1).im])
        };
        let point = entries(&rs).unwrap();
        let est = monte_carlo_errors(entries, &rs, 50, 2).unwrap();
        for ((p, e), truth) in point.iter().zip(&est).zip([0.5, 0.0, 0.0]) {
            assert!((p - truth).abs() < 3.0 * e.std_dev, "{p} vs {truth} ± {}", e.std_dev);
        }
    }

    #[test]
    fn spread_shrinks_with_exposure() {
        // tenfold exposure → about √10 smaller error bars, checked over 50 seeds
        let ratios: Vec<f64> = (0..50)
            .map(|seed| {
                let short = monte_carlo_error(off_diagonal, &records(1.0, seed), 20, seed).unwrap();
                let long = monte_carlo_error(off_diagonal, &records(10.0, seed), 20, seed).unwrap();
                short.std_dev / long.std_dev
            })
            .collect();
        let mean_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
        assert!((mean_ratio / 10f64.sqrt() - 1.0).abs() < 0.3, "ratio {mean_ratio}");
    }
}
