mod common;

use common::median;
use duality_lab::optics::{target_state, DetectorAngle};
use duality_lab::qmath::{fidelity, DensityMatrix, PureState};
use duality_lab::tomo::{
    mle_reconstruct, mle_reconstruct_with, pauli_settings, simulate_counts, CountRecord, MleOptions,
};
use proptest::prelude::*;

fn rho(deg: f64) -> DensityMatrix {
    target_state(DetectorAngle::new(deg).unwrap())
}

fn fidelity_at(truth: &DensityMatrix, flux: f64, exposure: f64, seed: u64) -> f64 {
    let records = simulate_counts(truth, &pauli_settings(0), flux, exposure, seed).unwrap();
    fidelity(&mle_reconstruct(&records).unwrap().rho_hat, truth).unwrap()
}

#[test]
fn high_count_fidelity_over_100_seeds() {
    // 5e4 counts per setting
    let truth = rho(22.5);
    let f: Vec<f64> = (0..100).map(|seed| fidelity_at(&truth, 5e4, 1.0, seed)).collect();
    let above = f.iter().filter(|&&x| x > 0.999).count();
    assert!(
        above >= 95,
        "{above}/100 above 0.999, worst {:?}",
        f.iter().cloned().fold(1.0, f64::min)
    );
}

#[test]
fn fidelity_improves_with_exposure() {
    let truth = rho(30.0);
    let medians: Vec<f64> = [1.0, 10.0, 100.0]
        .iter()
        .map(|&t| median((0..50).map(|seed| fidelity_at(&truth, 5e3, t, seed)).collect()))
        .collect();
    assert!(medians.windows(2).all(|w| w[1] >= w[0]), "{medians:?}");
}

fn arbitrary_counts() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..2000, 6).prop_filter("some counts", |c| c.iter().any(|&n| n > 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn any_counts_give_a_physical_state(counts in arbitrary_counts()) {
        let records: Vec<CountRecord> = pauli_settings(0)
            .iter()
            .zip(&counts)
            .map(|(s, &n)| CountRecord::new(s, n, 1.0).unwrap())
            .collect();
        let opts = MleOptions { track_history: true, ..MleOptions::default() };
        let fit = mle_reconstruct_with(&records, &opts).unwrap();
        let rho = &fit.rho_hat;
        prop_assert!((rho.matrix().trace().re - 1.0).abs() < 1e-10);
        prop_assert!(rho.eigenvalues().iter().all(|&l| l >= -1e-10));
        prop_assert!(fit.history.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn pure_states_reconstruct(a in 0.0f64..std::f64::consts::PI, phi in 0.0f64..std::f64::consts::TAU, seed in 0u64..1000) {
        let (s, c) = (a / 2.0).sin_cos();
        let ket = PureState::new(vec![
            num_complex::Complex64::new(c, 0.0),
            num_complex::Complex64::from_polar(s, phi),
        ]).unwrap();
        let truth = ket.density();
        prop_assert!(fidelity_at(&truth, 5e3, 10.0, seed) > 0.99);
    }
}
