//! Symmetric N-path ensembles: the duality relations still hold, but the
//! quadratic one is no longer tight in between the endpoints.

use duality_lab::duality::{ideal_sweep_n, theta_grid, verify_entropic, verify_quadratic, Source};

fn main() {
    for n in [2, 3, 4] {
        println!("N = {n}");
        for r in ideal_sweep_n(&theta_grid(0.0, 45.0, 5), n).unwrap() {
            let quad = verify_quadratic(&r, Source::Ideal).unwrap();
            let ent = verify_entropic(&r, Source::Ideal).unwrap();
            println!(
                "  θ = {:>5.2}°  quadratic {:.6} ≤ {:.6}   entropic {:.6} ≤ {:.6}",
                r.theta, quad.lhs, quad.bound, ent.lhs, ent.bound
            );
        }
    }
}
