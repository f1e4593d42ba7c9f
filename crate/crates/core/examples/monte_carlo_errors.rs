//! Bootstrap error bars on the coherence reconstructed from two-branch
//! wave-mode data.

use duality_lab::duality::{wave_mode_records, wave_quantities};
use duality_lab::tomo::monte_carlo_errors;

fn main() {
    for deg in [0.0, 22.5, 45.0] {
        let records = wave_mode_records(deg, 5e3, 10.0, 1).unwrap();
        let point = wave_quantities(&records).unwrap();
        let est = monte_carlo_errors(wave_quantities, &records, 100, 2).unwrap();
        println!(
            "θ = {deg:>4}°  C = {:.5} ± {:.5}  X = {:.5} ± {:.5}  V = {:.5} ± {:.5}",
            point[0], est[0].std_dev, point[1], est[1].std_dev, point[2], est[2].std_dev
        );
    }
}
