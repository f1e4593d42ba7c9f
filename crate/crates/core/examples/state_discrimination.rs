//! Minimum-error discrimination of the detector states: optimal success
//! probability, joint outcome table and the resulting which-path information.

use duality_lab::discrimination::{discriminate, symmetric_ensemble};
use duality_lab::optics::{detector_states, DetectorAngle};

fn main() {
    for deg in [0.0, 15.0, 22.5, 30.0, 45.0] {
        let (a, b) = detector_states(DetectorAngle::new(deg).unwrap());
        let r = discriminate(&[a, b], &[0.5, 0.5]).unwrap();
        let closed_form = (1.0 + (2.0 * f64::to_radians(deg)).sin()) / 2.0;
        println!(
            "θ = {deg:>4}°  Ps = {:.9} (closed form {closed_form:.9})  H(M:D) = {:.6} bits  flag = {:?}",
            r.p_success,
            r.mutual_info,
            r.povm.flag()
        );
    }

    // three states with pairwise overlap 0.3, square-root measurement
    let states = symmetric_ensemble(3, 0.3).unwrap();
    let r = discriminate(&states, &[1.0 / 3.0; 3]).unwrap();
    println!(
        "\nN = 3, overlap 0.3: Ps = {:.6}, H(M:D) = {:.6} bits",
        r.p_success, r.mutual_info
    );
    for (k, row) in r.joint.entries().iter().enumerate() {
        println!(
            "  M={}: {:?}",
            k + 1,
            row.iter().map(|p| format!("{p:.4}")).collect::<Vec<_>>()
        );
    }
}
