//! Scalar closed forms used as independent oracles, plus small helpers.
#![allow(dead_code)]

use duality_lab::qmath::PureState;
use num_complex::Complex64;

pub fn h2(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

/// Relative-entropy coherence of the path state.
pub fn c_oracle(deg: f64) -> f64 {
    1.0 - h2(deg.to_radians().cos().powi(2))
}

pub fn ps_oracle(deg: f64) -> f64 {
    (1.0 + (2.0 * deg.to_radians()).sin()) / 2.0
}

pub fn h_oracle(deg: f64) -> f64 {
    1.0 - h2(ps_oracle(deg))
}

pub fn x_oracle(deg: f64) -> f64 {
    (2.0 * deg.to_radians()).cos() / 2.0
}

/// `(1/√2)[sinθ(|H⟩−|V⟩)|1⟩ + cosθ(|H⟩+|V⟩)|2⟩]` as (1H, 1V, 2H, 2V).
pub fn wave_output_oracle(deg: f64) -> Vec<Complex64> {
    let (s, c) = deg.to_radians().sin_cos();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [s * r, -s * r, c * r, c * r]
        .iter()
        .map(|&a| Complex64::new(a, 0.0))
        .collect()
}

/// Largest amplitude difference after removing the best global phase.
pub fn distance_up_to_phase(a: &[Complex64], b: &[Complex64]) -> f64 {
    let overlap: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    a.iter().zip(b).map(|(x, y)| (x * phase - y).norm()).fold(0.0, f64::max)
}

pub fn grid() -> Vec<f64> {
    (0..19).map(|k| 2.5 * k as f64).collect()
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

pub fn amplitudes(s: &PureState) -> Vec<Complex64> {
    s.amplitudes().to_vec()
}
