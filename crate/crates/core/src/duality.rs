//! θ sweeps of the wave and particle quantifiers and the three duality
//! relations between them.
//!
//! The ideal side is computed through the optics, coherence and
//! discrimination modules. The simulated side generates photon counts for
//! both circuit settings, reconstructs, and attaches bootstrap error bars.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coherence::{coherence_report, CoherenceError};
use crate::discrimination::{discriminate, symmetric_ensemble, DiscriminationError, JointTable, Povm};
use crate::optics::{
    composite_unitary, detector_states, joint_state, reduced_path_state, CircuitMode, DetectorAngle, OpticsError,
};
use crate::qmath::{PureState, QmathError};
use crate::rng::derive_seed;
use crate::tomo::{
    branch_settings, monte_carlo_errors, simulate_counts, split_branches, weighted_two_branch_reconstruct, CountRecord,
    McEstimate, MeasurementSetting, PauliSetting, TomoError, DEFAULT_EXPOSURE_S, DEFAULT_FLUX, DEFAULT_MC_SAMPLES,
};

/// Tolerance for verdicts on ideal values.
pub const IDEAL_TOL: f64 = 1e-9;
/// Simulated verdicts allow this many standard deviations.
pub const SIGMA_BAND: f64 = 3.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DualityError {
    #[error("need at least 2 paths, got {0}")]
    TooFewPaths(usize),
    #[error("θ = {theta}°: {source}")]
    Optics { theta: f64, source: OpticsError },
    #[error("θ = {theta}°: {source}")]
    Discrimination { theta: f64, source: DiscriminationError },
    #[error("θ = {theta}°: {source}")]
    Coherence { theta: f64, source: CoherenceError },
    #[error("θ = {theta}°: {source}")]
    Tomo { theta: f64, source: TomoError },
    #[error("θ = {theta}°: {source}")]
    Qmath { theta: f64, source: QmathError },
}

/// Noise-free quantifiers at one θ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdealQuantities {
    /// Relative-entropy coherence, bits.
    pub c: f64,
    /// Mutual information between path and discrimination outcome, bits.
    pub h: f64,
    /// l1 coherence over N.
    pub x: f64,
    pub ps: f64,
    /// `Ps − 1/N`
    pub p: f64,
    /// `2|ρ₁₂|`; two paths only.
    pub v: Option<f64>,
    /// `2(Ps − 1/2)`; two paths only.
    pub d: Option<f64>,
}

/// A simulated quantifier: the value from the simulated counts plus the
/// bootstrap spread around it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Simulated {
    pub value: f64,
    pub mc: McEstimate,
}

impl Simulated {
    pub fn std_dev(&self) -> f64 {
        self.mc.std_dev
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulatedQuantities {
    pub c: Simulated,
    pub h: Simulated,
    pub x: Simulated,
    pub ps: Simulated,
    pub p: Simulated,
    pub v: Simulated,
    pub d: Simulated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    /// Entropy of the path prior, `log₂ N` bits.
    pub entropic: f64,
    /// `(1 − 1/N)²`
    pub quadratic: f64,
}

impl Bounds {
    pub fn for_paths(n_paths: usize) -> Self {
        let n = n_paths as f64;
        Self {
            entropic: n.log2(),
            quadratic: (1.0 - 1.0 / n).powi(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    /// Detector angle, degrees.
    pub theta: f64,
    pub n_paths: usize,
    pub ideal: IdealQuantities,
    /// Present for two-path sweeps run with simulation.
    pub simulated: Option<SimulatedQuantities>,
    pub bounds: Bounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    /// `V² + D² ≤ 1`
    GreenbergerYasin,
    /// `C + H ≤ log₂ N`
    Entropic,
    /// `(Ps − 1/N)² + X² ≤ (1 − 1/N)²`
    Quadratic,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Self::GreenbergerYasin => "GY",
            Self::Entropic => "entropic",
            Self::Quadratic => "quadratic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityVerdict {
    pub relation: Relation,
    pub lhs: f64,
    pub bound: f64,
    /// Allowed excess of `lhs` over `bound`.
    pub tolerance: f64,
    pub satisfied: bool,
    /// `bound − lhs`
    pub slack: f64,
}

impl DualityVerdict {
    /// Verdict for `lhs ≤ bound`, with tolerance `3σ` when `sigma` is given
    /// and [`IDEAL_TOL`] otherwise (or when `3σ` is smaller).
    pub fn new(relation: Relation, lhs: f64, bound: f64, sigma: Option<f64>) -> Self {
        let tolerance = sigma.map_or(IDEAL_TOL, |s| (SIGMA_BAND * s).max(IDEAL_TOL));
        Self {
            relation,
            lhs,
            bound,
            tolerance,
            satisfied: lhs <= bound + tolerance,
            slack: bound - lhs,
        }
    }

    /// Same verdict with `extra` added to the tolerance, e.g. for the
    /// rounding of values read back from a file.
    pub fn widened(self, extra: f64) -> Self {
        let tolerance = self.tolerance + extra;
        Self {
            tolerance,
            satisfied: self.lhs <= self.bound + tolerance,
            ..self
        }
    }
}

/// Which half of a record a verdict is computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Ideal,
    Simulated,
}

/// `C + H` against `log₂ N`.
pub fn entropic_verdict(c: f64, h: f64, bound: f64, sigmas: Option<(f64, f64)>) -> DualityVerdict {
    let sigma = sigmas.map(|(sc, sh)| sc.hypot(sh));
    DualityVerdict::new(Relation::Entropic, c + h, bound, sigma)
}

/// `P² + X²` against `(1 − 1/N)²`, with first-order error propagation.
pub fn quadratic_verdict(x: f64, p: f64, bound: f64, sigmas: Option<(f64, f64)>) -> DualityVerdict {
    let sigma = sigmas.map(|(sx, sp)| 2.0 * (x * sx).hypot(p * sp));
    DualityVerdict::new(Relation::Quadratic, p * p + x * x, bound, sigma)
}

/// `V² + D²` against 1, with first-order error propagation.
pub fn gy_verdict(v: f64, d: f64, sigmas: Option<(f64, f64)>) -> DualityVerdict {
    let sigma = sigmas.map(|(sv, sd)| 2.0 * (v * sv).hypot(d * sd));
    DualityVerdict::new(Relation::GreenbergerYasin, v * v + d * d, 1.0, sigma)
}

/// Entropic relation for one side of a record; `None` if that side is absent.
pub fn verify_entropic(record: &SweepRecord, source: Source) -> Option<DualityVerdict> {
    let bound = record.bounds.entropic;
    match source {
        Source::Ideal => Some(entropic_verdict(record.ideal.c, record.ideal.h, bound, None)),
        Source::Simulated => record
            .simulated
            .map(|s| entropic_verdict(s.c.value, s.h.value, bound, Some((s.c.std_dev(), s.h.std_dev())))),
    }
}

pub fn verify_quadratic(record: &SweepRecord, source: Source) -> Option<DualityVerdict> {
    let bound = record.bounds.quadratic;
    match source {
        Source::Ideal => Some(quadratic_verdict(record.ideal.x, record.ideal.p, bound, None)),
        Source::Simulated => record
            .simulated
            .map(|s| quadratic_verdict(s.x.value, s.p.value, bound, Some((s.x.std_dev(), s.p.std_dev())))),
    }
}

/// GY relation; only defined for two paths.
pub fn verify_gy(record: &SweepRecord, source: Source) -> Option<DualityVerdict> {
    match source {
        Source::Ideal => Some(gy_verdict(record.ideal.v?, record.ideal.d?, None)),
        Source::Simulated => record
            .simulated
            .map(|s| gy_verdict(s.v.value, s.d.value, Some((s.v.std_dev(), s.d.std_dev())))),
    }
}

/// Every applicable verdict for a record.
pub fn verify_record(record: &SweepRecord) -> Vec<DualityVerdict> {
    [Source::Ideal, Source::Simulated]
        .into_iter()
        .flat_map(|src| {
            [
                verify_gy(record, src),
                verify_entropic(record, src),
                verify_quadratic(record, src),
            ]
        })
        .flatten()
        .collect()
}

/// `start, …, end` in `steps` evenly spaced points; a single step gives
/// `[start]`.
pub fn theta_grid(start: f64, end: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..steps)
            .map(|k| start + (end - start) * k as f64 / (steps - 1) as f64)
            .collect(),
    }
}

/// Detector ensemble at angle θ: the two-path pair, or for `N > 2` a
/// symmetric ensemble with the same pairwise overlap `cos 2θ`.
pub fn detector_ensemble(theta: DetectorAngle, n_paths: usize) -> Result<Vec<PureState>, DualityError> {
    let deg = theta.degrees();
    match n_paths {
        0 | 1 => Err(DualityError::TooFewPaths(n_paths)),
        2 => {
            let (a, b) = detector_states(theta);
            Ok(vec![a, b])
        }
        n => symmetric_ensemble(n, (2.0 * theta.radians()).cos())
            .map_err(|source| DualityError::Discrimination { theta: deg, source }),
    }
}

fn angle(theta: f64) -> Result<DetectorAngle, DualityError> {
    DetectorAngle::new(theta).map_err(|source| DualityError::Optics { theta, source })
}

/// Ideal quantifiers at one θ.
pub fn ideal_point(theta: f64, n_paths: usize) -> Result<IdealQuantities, DualityError> {
    let detectors = detector_ensemble(angle(theta)?, n_paths)?;
    let rho = reduced_path_state(&detectors).map_err(|source| DualityError::Optics { theta, source })?;
    let coherence = coherence_report(&rho, n_paths).map_err(|source| DualityError::Coherence { theta, source })?;
    let priors = vec![1.0 / n_paths as f64; n_paths];
    let disc = discriminate(&detectors, &priors).map_err(|source| DualityError::Discrimination { theta, source })?;
    let two = n_paths == 2;
    Ok(IdealQuantities {
        c: coherence.c_relent,
        h: disc.mutual_info,
        x: coherence.x,
        ps: disc.p_success,
        p: disc.p_success - 1.0 / n_paths as f64,
        v: two.then_some(2.0 * rho.get(0, 1).norm()),
        d: two.then_some(2.0 * (disc.p_success - 0.5)),
    })
}

/// Ideal sweep over `thetas` for `n_paths` paths.
pub fn ideal_sweep_n(thetas: &[f64], n_paths: usize) -> Result<Vec<SweepRecord>, DualityError> {
    thetas
        .iter()
        .map(|&theta| {
            Ok(SweepRecord {
                theta,
                n_paths,
                ideal: ideal_point(theta, n_paths)?,
                simulated: None,
                bounds: Bounds::for_paths(n_paths),
            })
        })
        .collect()
}

/// Two-path ideal sweep.
pub fn ideal_sweep(thetas: &[f64]) -> Result<Vec<SweepRecord>, DualityError> {
    ideal_sweep_n(thetas, 2)
}

/// Counting statistics for the simulated pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    /// Counts per second.
    pub flux: f64,
    /// Seconds per setting.
    pub exposure: f64,
    pub mc_samples: usize,
    pub seed: u64,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            flux: DEFAULT_FLUX,
            exposure: DEFAULT_EXPOSURE_S,
            mc_samples: DEFAULT_MC_SAMPLES,
            seed: 0,
        }
    }
}

/// Independent seeds for one θ; they depend on θ itself, not its grid index,
/// so a point gives the same numbers in any grid.
fn point_seeds(seed: u64, theta: f64) -> [u64; 4] {
    let base = derive_seed(seed, theta.to_bits());
    [0, 1, 2, 3].map(|k| derive_seed(base, k))
}

/// Simulated wave-mode data: Pauli tomography on both output branches of the
/// wave-mode circuit.
pub fn wave_mode_records(theta: f64, flux: f64, exposure: f64, seed: u64) -> Result<Vec<CountRecord>, DualityError> {
    let psi = joint_state(angle(theta)?).density();
    let u = composite_unitary(CircuitMode::WaveMeasurement).map_err(|source| DualityError::Optics { theta, source })?;
    let out = psi.evolve(&u).map_err(|source| DualityError::Qmath { theta, source })?;
    simulate_counts(&out, &branch_settings(2, &PauliSetting::ALL), flux, exposure, seed)
        .map_err(|source| DualityError::Tomo { theta, source })
}

/// `[C, X, V]` from wave-mode records.
pub fn wave_quantities(records: &[CountRecord]) -> Result<Vec<f64>, TomoError> {
    let (b1, b2) = split_branches(records);
    let rho = weighted_two_branch_reconstruct(&b1, &b2)?.rho;
    let report = coherence_report(&rho, 2).map_err(|e| TomoError::Pipeline {
        sample: 0,
        message: e.to_string(),
    })?;
    Ok(vec![report.c_relent, report.x, 2.0 * rho.get(0, 1).norm()])
}

/// Simulated particle-mode data: the optimal discrimination measurement in
/// each path, with the measurement circuit acting as the identity.
pub fn particle_mode_records(
    theta: f64,
    flux: f64,
    exposure: f64,
    seed: u64,
) -> Result<Vec<CountRecord>, DualityError> {
    let detectors = detector_ensemble(angle(theta)?, 2)?;
    let povm = discriminate(&detectors, &[0.5, 0.5])
        .map_err(|source| DualityError::Discrimination { theta, source })?
        .povm;
    let psi = joint_state(angle(theta)?).density();
    let u =
        composite_unitary(CircuitMode::ParticleMeasurement).map_err(|source| DualityError::Optics { theta, source })?;
    let out = psi.evolve(&u).map_err(|source| DualityError::Qmath { theta, source })?;
    simulate_counts(&out, &povm_settings(&povm, 2), flux, exposure, seed)
        .map_err(|source| DualityError::Tomo { theta, source })
}

fn povm_settings(povm: &Povm, n_branches: usize) -> Vec<MeasurementSetting> {
    (0..n_branches)
        .flat_map(|branch| {
            povm.elements()
                .iter()
                .zip(povm.labels())
                .map(move |(e, label)| MeasurementSetting {
                    label: label.clone(),
                    branch,
                    projector: e.clone(),
                })
        })
        .collect()
}

/// Joint outcome/path table from particle-mode records: outcome `k` is the
/// position of the record within its branch.
pub fn particle_joint_table(records: &[CountRecord]) -> Result<JointTable, TomoError> {
    let (b1, b2) = split_branches(records);
    let outcomes = b1.len();
    if outcomes == 0 || b2.len() != outcomes {
        return Err(TomoError::Pipeline {
            sample: 0,
            message: "particle-mode records must have the same outcomes in both branches".into(),
        });
    }
    let counts: Vec<Vec<u64>> = (0..outcomes).map(|k| vec![b1[k].counts, b2[k].counts]).collect();
    JointTable::from_counts(&counts).map_err(|e| TomoError::Pipeline {
        sample: 0,
        message: e.to_string(),
    })
}

/// `[H, Ps, P, D]` from particle-mode records.
pub fn particle_quantities(records: &[CountRecord]) -> Result<Vec<f64>, TomoError> {
    let joint = particle_joint_table(records)?;
    let ps = joint.success_probability();
    Ok(vec![
        crate::discrimination::mutual_information(&joint),
        ps,
        ps - 0.5,
        2.0 * (ps - 0.5),
    ])
}

fn simulated(value: f64, mc: McEstimate) -> Simulated {
    Simulated { value, mc }
}

/// Simulated quantifiers at one θ for two paths.
pub fn simulated_point(theta: f64, config: &SimulationConfig) -> Result<SimulatedQuantities, DualityError> {
    let tomo = |source| DualityError::Tomo { theta, source };
    let [wave_seed, wave_mc, particle_seed, particle_mc] = point_seeds(config.seed, theta);

    let wave = wave_mode_records(theta, config.flux, config.exposure, wave_seed)?;
    let wave_point = wave_quantities(&wave).map_err(tomo)?;
    let wave_mc = monte_carlo_errors(wave_quantities, &wave, config.mc_samples, wave_mc).map_err(tomo)?;

    let particle = particle_mode_records(theta, config.flux, config.exposure, particle_seed)?;
    let particle_point = particle_quantities(&particle).map_err(tomo)?;
    let particle_mc =
        monte_carlo_errors(particle_quantities, &particle, config.mc_samples, particle_mc).map_err(tomo)?;

    Ok(SimulatedQuantities {
        c: simulated(wave_point[0], wave_mc[0]),
        x: simulated(wave_point[1], wave_mc[1]),
        v: simulated(wave_point[2], wave_mc[2]),
        h: simulated(particle_point[0], particle_mc[0]),
        ps: simulated(particle_point[1], particle_mc[1]),
        p: simulated(particle_point[2], particle_mc[2]),
        d: simulated(particle_point[3], particle_mc[3]),
    })
}

/// Ideal plus simulated sweep. Points run in parallel; output is in the
/// order of `thetas`. For more than two paths only the ideal side is filled.
pub fn simulated_sweep(
    thetas: &[f64],
    n_paths: usize,
    config: &SimulationConfig,
) -> Result<Vec<SweepRecord>, DualityError> {
    let mut records = ideal_sweep_n(thetas, n_paths)?;
    if n_paths == 2 {
        let sims: Vec<Result<SimulatedQuantities, DualityError>> =
            thetas.par_iter().map(|&theta| simulated_point(theta, config)).collect();
        for (record, sim) in records.iter_mut().zip(sims) {
            record.simulated = Some(sim?);
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // scalar closed forms, independent of the matrix pipelines
    fn h2(p: f64) -> f64 {
        if p <= 0.0 || p >= 1.0 {
            0.0
        } else {
            -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
        }
    }
    fn oracle_c(deg: f64) -> f64 {
        1.0 - h2(deg.to_radians().cos().powi(2))
    }
    fn oracle_ps(deg: f64) -> f64 {
        (1.0 + (2.0 * deg.to_radians()).sin()) / 2.0
    }
    fn oracle_h(deg: f64) -> f64 {
        1.0 - h2(oracle_ps(deg))
    }
    fn oracle_x(deg: f64) -> f64 {
        (2.0 * deg.to_radians()).cos() / 2.0
    }

    fn grid() -> Vec<f64> {
        theta_grid(0.0, 45.0, 19)
    }

    #[test]
    fn default_grid_has_19_points() {
        let g = grid();
        assert_eq!(g.len(), 19);
        assert_eq!(g[1], 2.5);
        assert_eq!(g[18], 45.0);
        assert_eq!(theta_grid(10.0, 45.0, 1), vec![10.0]);
    }

    #[test]
    fn endpoint_values() {
        let s = ideal_sweep(&[0.0, 45.0]).unwrap();
        let (a, b) = (s[0].ideal, s[1].ideal);
        assert!((a.c - 1.0).abs() < 1e-12 && a.h.abs() < 1e-12);
        assert!((a.x - 0.5).abs() < 1e-12 && a.p.abs() < 1e-12);
        assert!(b.c.abs() < 1e-12 && (b.h - 1.0).abs() < 1e-12);
        assert!(b.x.abs() < 1e-12 && (b.p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn midpoint_values() {
        let q = ideal_point(22.5, 2).unwrap();
        assert!((q.c - 0.3991240).abs() < 1e-7);
        assert!((q.h - q.c).abs() < 1e-12);
        assert!((q.x - 0.3535534).abs() < 1e-7);
        assert!((q.ps - 0.8535534).abs() < 1e-7);
    }

    #[test]
    fn pipelines_match_closed_forms() {
        for rec in ideal_sweep(&grid()).unwrap() {
            let t = rec.theta;
            let q = rec.ideal;
            assert!((q.c - oracle_c(t)).abs() < 1e-10, "C at {t}");
            assert!((q.h - oracle_h(t)).abs() < 1e-10, "H at {t}");
            assert!((q.x - oracle_x(t)).abs() < 1e-10, "X at {t}");
            assert!((q.ps - oracle_ps(t)).abs() < 1e-10, "Ps at {t}");
            assert!((q.v.unwrap() - (2.0 * t.to_radians()).cos()).abs() < 1e-10);
            assert!((q.d.unwrap() - (2.0 * t.to_radians()).sin()).abs() < 1e-10);
        }
    }

    #[test]
    fn ideal_relations_on_grid() {
        for rec in ideal_sweep(&grid()).unwrap() {
            let quad = verify_quadratic(&rec, Source::Ideal).unwrap();
            assert!(quad.satisfied && quad.slack.abs() < 1e-12, "θ={}", rec.theta);
            let gy = verify_gy(&rec, Source::Ideal).unwrap();
            assert!(gy.satisfied && (gy.lhs - 1.0).abs() < 1e-12);
            let ent = verify_entropic(&rec, Source::Ideal).unwrap();
            assert!(ent.lhs <= 1.0 + 1e-10);
            let at_end = rec.theta == 0.0 || rec.theta == 45.0;
            assert_eq!(ent.slack.abs() < 1e-10, at_end, "θ={}", rec.theta);
        }
        let mid = ideal_sweep(&[22.5]).unwrap();
        let ent = verify_entropic(&mid[0], Source::Ideal).unwrap();
        assert!(ent.slack > 0.01 && (ent.lhs - 0.7982479).abs() < 1e-7);
    }

    #[test]
    fn complementarity_is_monotone() {
        let s = ideal_sweep(&grid()).unwrap();
        for w in s.windows(2) {
            let (a, b) = (w[0].ideal, w[1].ideal);
            assert!(b.h >= a.h - 1e-12 && b.p >= a.p - 1e-12);
            assert!(b.c <= a.c + 1e-12 && b.x <= a.x + 1e-12);
        }
    }

    #[test]
    fn three_paths_orthogonal_detectors() {
        let rec = &ideal_sweep_n(&[45.0], 3).unwrap()[0];
        let quad = verify_quadratic(rec, Source::Ideal).unwrap();
        assert!((quad.lhs - 4.0 / 9.0).abs() < 1e-12);
        assert!(quad.satisfied && quad.slack.abs() < 1e-12);
        assert!(verify_gy(rec, Source::Ideal).is_none());
        assert!((rec.bounds.entropic - 3f64.log2()).abs() < 1e-15);
    }

    #[test]
    fn violation_is_reported() {
        let v = quadratic_verdict(0.6, 0.0, 0.25, None);
        assert!(!v.satisfied && v.slack < 0.0);
        assert!(quadratic_verdict(0.5, 0.0, 0.25, Some((0.01, 0.0))).satisfied);
    }

    #[test]
    fn simulated_point_near_ideal() {
        let config = SimulationConfig {
            mc_samples: 20,
            ..SimulationConfig::default()
        };
        let s = simulated_point(22.5, &config).unwrap();
        let q = ideal_point(22.5, 2).unwrap();
        for (sim, ideal) in [(s.c, q.c), (s.h, q.h), (s.x, q.x), (s.p, q.p)] {
            assert!(sim.std_dev() > 0.0 && sim.std_dev() < 0.01);
            assert!((sim.value - ideal).abs() < 5.0 * sim.std_dev(), "{sim:?} vs {ideal}");
        }
    }

    #[test]
    fn sweep_is_ordered_and_seeded() {
        let config = SimulationConfig {
            mc_samples: 4,
            ..SimulationConfig::default()
        };
        let thetas = [30.0, 0.0, 15.0];
        let a = simulated_sweep(&thetas, 2, &config).unwrap();
        assert_eq!(a.iter().map(|r| r.theta).collect::<Vec<_>>(), thetas);
        assert_eq!(a, simulated_sweep(&thetas, 2, &config).unwrap());
        // a point does not depend on the rest of the grid
        assert_eq!(a[2], simulated_sweep(&[15.0], 2, &config).unwrap()[0]);
    }

    proptest! {
        #[test]
        fn quadratic_equality_anywhere(t in 0.0f64..=90.0) {
            let q = ideal_point(t, 2).unwrap();
            prop_assert!((q.p * q.p + q.x * q.x - 0.25).abs() < 1e-12);
            prop_assert!(q.c + q.h <= 1.0 + 1e-10);
        }

        #[test]
        fn n_path_relations_hold(t in 0.0f64..=45.0, n in 3usize..6) {
            let rec = &ideal_sweep_n(&[t], n).unwrap()[0];
            prop_assert!(verify_quadratic(rec, Source::Ideal).unwrap().satisfied);
            prop_assert!(verify_entropic(rec, Source::Ideal).unwrap().satisfied);
        }
    }
}
