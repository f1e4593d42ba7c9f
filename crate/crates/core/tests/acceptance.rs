//! One pass/fail line per acceptance criterion. Exits non-zero if any fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use duality_lab::discrimination::{discriminate, helstrom_povm, success_probability, Povm};
use duality_lab::duality::{
    ideal_sweep, simulated_point, simulated_sweep, theta_grid, verify_entropic, verify_quadratic, SimulationConfig,
    Source,
};
use duality_lab::optics::{
    composite_unitary, detector_states, hadamard, joint_state, pauli_x, CircuitMode, DetectorAngle,
};
use duality_lab::qmath::{fidelity, tensor, ComplexMatrix, DensityMatrix, PureState};
use duality_lab::tomo::{mle_reconstruct, pauli_settings, simulate_counts, CountRecord};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.detail = format!("{}; {:.2?} (limit {:?})", o.detail, elapsed, limit);
    o.pass &= elapsed < limit;
    o
}

fn quadratic_equality() -> Outcome {
    timed(Duration::from_secs(1), || {
        let records = ideal_sweep(&grid()).unwrap();
        let worst = records
            .iter()
            .map(|r| (verify_quadratic(r, Source::Ideal).unwrap().lhs - 0.25).abs())
            .fold(0.0, f64::max);
        outcome(
            records.len() == 19 && worst < 1e-12,
            format!("max |P²+X²−1/4| = {worst:.1e} over 19 points"),
        )
    })
}

fn entropic_relation() -> Outcome {
    timed(Duration::from_secs(1), || {
        let records = ideal_sweep(&grid()).unwrap();
        let mut pass = true;
        let mut max_lhs: f64 = 0.0;
        for r in &records {
            let v = verify_entropic(r, Source::Ideal).unwrap();
            max_lhs = max_lhs.max(v.lhs);
            let endpoint = r.theta == 0.0 || r.theta == 45.0;
            pass &= v.lhs <= 1.0 && ((v.slack.abs() < 1e-10) == endpoint);
        }
        let mid = verify_entropic(&ideal_sweep(&[22.5]).unwrap()[0], Source::Ideal)
            .unwrap()
            .lhs;
        let oracle = c_oracle(22.5) + h_oracle(22.5);
        pass &= (mid - oracle).abs() < 1e-4;
        outcome(
            pass,
            format!(
                "max C+H = {max_lhs:.12}; C+H(22.5°) = {mid:.7} vs closed form {oracle:.7} (target 0.79846 differs from the closed form by {:.1e})",
                (0.79846 - oracle).abs()
            ),
        )
    })
}

fn endpoints() -> Outcome {
    let ideal = ideal_sweep(&[0.0, 45.0]).unwrap();
    let (a, b) = (ideal[0].ideal, ideal[1].ideal);
    let exact = (a.c - 1.0).abs() < 1e-12
        && (b.h - 1.0).abs() < 1e-12
        && (a.x - 0.5).abs() < 1e-12
        && (b.p - 0.5).abs() < 1e-12;
    timed(Duration::from_secs(120), || {
        let mut good = 0;
        for seed in 0..100 {
            let config = SimulationConfig {
                seed,
                ..SimulationConfig::default()
            };
            let zero = simulated_point(0.0, &config).unwrap();
            let end = simulated_point(45.0, &config).unwrap();
            let ok = [(zero.c, 1.0), (zero.x, 0.5), (end.h, 1.0), (end.p, 0.5)]
                .iter()
                .all(|(s, ideal)| (s.value - ideal).abs() <= 0.02 && s.std_dev() <= 0.005);
            good += usize::from(ok);
        }
        outcome(
            exact && good >= 95,
            format!("ideal endpoints exact: {exact}; {good}/100 seeds within 0.02 with σ ≤ 0.005"),
        )
    })
}

fn error_bar_magnitude() -> Outcome {
    let records = simulated_sweep(&theta_grid(0.0, 45.0, 19), 2, &SimulationConfig::default()).unwrap();
    let mut bars = Vec::new();
    for r in &records {
        let s = r.simulated.unwrap();
        for (name, q) in [("C", s.c), ("H", s.h), ("X", s.x), ("P", s.p)] {
            bars.push((name, r.theta, q.std_dev()));
        }
    }
    let outside: Vec<String> = bars
        .iter()
        .filter(|(_, _, e)| !(5e-5..=1e-2).contains(e))
        .map(|(n, t, e)| format!("{n}_err({t}°)={e:.1e}"))
        .collect();
    let (min, max) = bars
        .iter()
        .fold((f64::MAX, 0.0f64), |(lo, hi), b| (lo.min(b.2), hi.max(b.2)));
    outcome(
        outside.is_empty(),
        format!(
            "bars span [{min:.1e}, {max:.1e}]; {} of {} outside [5e-5, 1e-2]: {}",
            outside.len(),
            bars.len(),
            outside.join(" ")
        ),
    )
}

fn circuit_identity() -> Outcome {
    let wave = composite_unitary(CircuitMode::WaveMeasurement).unwrap();
    let particle = composite_unitary(CircuitMode::ParticleMeasurement).unwrap();
    let d_wave = wave.distance_up_to_phase(&tensor(&(&pauli_x() * &hadamard()), &hadamard()));
    let d_particle = particle.distance_up_to_phase(&ComplexMatrix::identity(4));
    let d_states = grid()
        .iter()
        .map(|&t| {
            let out = joint_state(DetectorAngle::new(t).unwrap()).evolve(&wave).unwrap();
            distance_up_to_phase(&amplitudes(&out), &wave_output_oracle(t))
        })
        .fold(0.0, f64::max);
    outcome(
        d_wave < 1e-10 && d_particle < 1e-10 && d_states < 1e-10,
        format!("wave {d_wave:.1e}, particle {d_particle:.1e}, output states {d_states:.1e} over 19 θ"),
    )
}

fn random_projective(rng: &mut ChaCha8Rng) -> Povm {
    let mut g = || -> f64 { StandardNormal.sample(rng) };
    let u = PureState::normalized(vec![Complex64::new(g(), g()), Complex64::new(g(), g())]).unwrap();
    let a = u.amplitudes();
    let perp = PureState::new(vec![-a[1].conj(), a[0].conj()]).unwrap();
    Povm::projective(&[u, perp]).unwrap()
}

fn discrimination_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut beaten = 0;
    let mut worst_closed: f64 = 0.0;
    for t in grid() {
        let (a, b) = detector_states(DetectorAngle::new(t).unwrap());
        let states = [a.clone(), b.clone()];
        let helstrom = success_probability(&helstrom_povm(&a, &b, (0.5, 0.5)).unwrap(), &states, &[0.5, 0.5]).unwrap();
        worst_closed = worst_closed.max((helstrom - ps_oracle(t)).abs());
        for _ in 0..1000 {
            let ps = success_probability(&random_projective(&mut rng), &states, &[0.5, 0.5]).unwrap();
            beaten += usize::from(ps > helstrom + 1e-12);
        }
    }
    outcome(
        beaten == 0 && worst_closed < 1e-12,
        format!("{beaten} of 19000 random projective measurements beat Helstrom; max |Ps − closed form| = {worst_closed:.1e}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut identity: f64 = 0.0;
    for r in ideal_sweep(&grid()).unwrap() {
        let q = r.ideal;
        let t = r.theta;
        for (got, want) in [
            (q.c, c_oracle(t)),
            (q.h, h_oracle(t)),
            (q.x, x_oracle(t)),
            (q.ps, ps_oracle(t)),
        ] {
            worst = worst.max((got - want).abs());
        }
        let (a, b) = detector_states(DetectorAngle::new(t).unwrap());
        let d = discriminate(&[a, b], &[0.5, 0.5]).unwrap();
        identity = identity.max((d.mutual_info - (1.0 - h2(d.p_success))).abs());
    }
    outcome(
        worst < 1e-10 && identity < 1e-10,
        format!("max pipeline − closed form = {worst:.1e}; max |H − (1 − h(Ps))| = {identity:.1e}"),
    )
}

fn physical(rho: &DensityMatrix) -> bool {
    (rho.matrix().trace().re - 1.0).abs() < 1e-10 && rho.eigenvalues().iter().all(|&l| l >= -1e-10)
}

fn tomography_consistency() -> Outcome {
    let truth = duality_lab::optics::target_state(DetectorAngle::new(30.0).unwrap());
    let exact: Vec<CountRecord> = pauli_settings(0)
        .iter()
        .map(|s| CountRecord::new(s, (1e13 * truth.expectation(&s.projector).unwrap()).round() as u64, 1.0).unwrap())
        .collect();
    let exact_fit = mle_reconstruct(&exact).unwrap().rho_hat;
    let f_exact = fidelity(&exact_fit, &truth).unwrap();
    let mut all_physical = physical(&exact_fit);
    let target = duality_lab::optics::target_state(DetectorAngle::new(22.5).unwrap());
    let fids: Vec<f64> = (0..50)
        .map(|seed| {
            let records = simulate_counts(&target, &pauli_settings(0), 5e4, 1.0, seed).unwrap();
            let fit = mle_reconstruct(&records).unwrap().rho_hat;
            all_physical &= physical(&fit);
            fidelity(&fit, &target).unwrap()
        })
        .collect();
    let med = median(fids);
    outcome(
        1.0 - f_exact < 1e-9 && med > 0.999 && all_physical,
        format!(
            "exact-data infidelity {:.1e}; median Poisson fidelity {med:.6}; all physical: {all_physical}",
            1.0 - f_exact
        ),
    )
}

fn run_bin(args: &[&str], threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_duality-lab"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .env_remove("DUALITY_LAB_CONFIG")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn determinism() -> Outcome {
    let dirs: Vec<_> = (0..2).map(|_| tempfile::tempdir().unwrap()).collect();
    let mut same = true;
    for fmt in ["csv", "json"] {
        for (dir, threads) in dirs.iter().zip(["1", "4"]) {
            let d = dir.path().to_str().unwrap();
            run_bin(&["sweep", "--seed", "7", "--format", fmt, "--out-dir", d], threads);
        }
        for fig in ["fig2", "fig3"] {
            let name = format!("{fig}.{fmt}");
            same &= std::fs::read(dirs[0].path().join(&name)).unwrap()
                == std::fs::read(dirs[1].path().join(&name)).unwrap();
        }
    }
    let counts = dirs[0].path().join("counts.csv");
    let records = duality_lab::duality::wave_mode_records(30.0, 5e3, 10.0, 7).unwrap();
    duality_lab::tomo::write_records_csv(std::fs::File::create(&counts).unwrap(), &records).unwrap();
    let c = counts.to_str().unwrap();
    same &= run_bin(&["tomo", c, "--seed", "7"], "1") == run_bin(&["tomo", c, "--seed", "7"], "4");
    outcome(
        same,
        "sweep (csv, json) and tomo outputs with 1 vs 4 threads byte-identical".to_string(),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("quadratic duality equality", quadratic_equality),
        ("entropic duality", entropic_relation),
        ("endpoint values", endpoints),
        ("error-bar magnitude", error_bar_magnitude),
        ("circuit identity", circuit_identity),
        ("discrimination optimality", discrimination_optimality),
        ("oracle equivalence", oracle_equivalence),
        ("tomography consistency", tomography_consistency),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.pass);
        println!(
            "criterion {} {:<28} {}  {}",
            k + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
