//! Ideal wave and particle quantifiers across the default θ grid.

use duality_lab::duality::{ideal_sweep, theta_grid, verify_entropic, verify_quadratic, Source};

fn main() {
    let records = ideal_sweep(&theta_grid(0.0, 45.0, 19)).expect("valid grid");
    println!(
        "{:>6} {:>9} {:>9} {:>9} {:>9} {:>9} {:>11}",
        "theta", "C", "H", "C+H", "X", "P", "P²+X²"
    );
    for r in &records {
        let q = r.ideal;
        let ent = verify_entropic(r, Source::Ideal).unwrap();
        let quad = verify_quadratic(r, Source::Ideal).unwrap();
        println!(
            "{:>6.1} {:>9.6} {:>9.6} {:>9.6} {:>9.6} {:>9.6} {:>11.9}",
            r.theta, q.c, q.h, ent.lhs, q.x, q.p, quad.lhs
        );
    }
}
