//! The element chains of both measurement settings collapse to simple
//! unitaries, and the wave setting maps the prepared state as expected.

use duality_lab::optics::{composite_unitary, hadamard, joint_state, pauli_x, CircuitMode, DetectorAngle, Stage};
use duality_lab::qmath::{tensor, ComplexMatrix};

fn show(stages: &[Stage]) -> String {
    stages.iter().map(|s| s.label).collect::<Vec<_>>().join(" → ")
}

fn main() {
    let wave = composite_unitary(CircuitMode::WaveMeasurement).unwrap();
    let particle = composite_unitary(CircuitMode::ParticleMeasurement).unwrap();
    let expected_wave = tensor(&(&pauli_x() * &hadamard()), &hadamard());

    println!("wave chain:     {}", show(&CircuitMode::WaveMeasurement.stages()));
    println!(
        "  distance to (σx·H)⊗H up to phase: {:.2e}",
        wave.distance_up_to_phase(&expected_wave)
    );
    println!("particle chain: {}", show(&CircuitMode::ParticleMeasurement.stages()));
    println!(
        "  distance to I₄ up to phase:       {:.2e}",
        particle.distance_up_to_phase(&ComplexMatrix::identity(4))
    );

    let theta = DetectorAngle::new(30.0).unwrap();
    let out = joint_state(theta).evolve(&wave).unwrap();
    println!("\nθ = 30°, wave-mode output amplitudes (1H, 1V, 2H, 2V):");
    for a in out.amplitudes() {
        println!("  {:+.6} {:+.6}i", a.re, a.im);
    }
}
