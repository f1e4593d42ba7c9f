//! Simulated sweep at the default counting statistics, with every relation
//! checked against 3σ error bars.

use duality_lab::duality::{simulated_sweep, theta_grid, verify_record, SimulationConfig};

fn main() {
    let config = SimulationConfig {
        seed: 2024,
        ..SimulationConfig::default()
    };
    let records = simulated_sweep(&theta_grid(0.0, 45.0, 10), 2, &config).unwrap();
    for r in &records {
        let s = r.simulated.unwrap();
        let ok = verify_record(r).iter().all(|v| v.satisfied);
        println!(
            "θ = {:>4.1}°  C = {:.4}±{:.4}  H = {:.4}±{:.4}  X = {:.4}±{:.4}  P = {:.4}±{:.4}  {}",
            r.theta,
            s.c.value,
            s.c.std_dev(),
            s.h.value,
            s.h.std_dev(),
            s.x.value,
            s.x.std_dev(),
            s.p.value,
            s.p.std_dev(),
            if ok { "ok" } else { "violated" }
        );
    }
}
