//! Pauli tomography of a path state: simulated counts, maximum-likelihood
//! reconstruction, fidelity against the truth.

use duality_lab::optics::{target_state, DetectorAngle};
use duality_lab::qmath::fidelity;
use duality_lab::tomo::{mle_reconstruct_with, pauli_settings, simulate_counts, MleOptions};

fn main() {
    let truth = target_state(DetectorAngle::new(30.0).unwrap());
    let options = MleOptions {
        track_history: true,
        ..MleOptions::default()
    };
    for exposure in [0.1, 1.0, 10.0, 100.0] {
        let records = simulate_counts(&truth, &pauli_settings(0), 5e3, exposure, 42).unwrap();
        let fit = mle_reconstruct_with(&records, &options).unwrap();
        let rho = &fit.rho_hat;
        println!(
            "exposure {exposure:>5} s: ρ₀₁ = {:+.5}{:+.5}i  F = {:.7}  iterations = {} (log L {:.3} → {:.3})",
            rho.get(0, 1).re,
            rho.get(0, 1).im,
            fidelity(rho, &truth).unwrap(),
            fit.iterations,
            fit.history.first().unwrap(),
            fit.log_likelihood,
        );
    }
}
