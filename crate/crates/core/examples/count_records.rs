//! Writes wave-mode count records to CSV, reads them back and reconstructs
//! the path state offline. Pass a file path to keep the CSV, e.g. for
//! `duality-lab tomo`.

use std::fs::File;

use duality_lab::duality::wave_mode_records;
use duality_lab::tomo::{read_records_csv, split_branches, weighted_two_branch_reconstruct, write_records_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("theta30_counts.csv").display().to_string());
    let records = wave_mode_records(30.0, 5e3, 10.0, 7)?;
    write_records_csv(File::create(&path)?, &records)?;
    println!("wrote {} records to {path}", records.len());

    let back = read_records_csv(File::open(&path)?)?;
    let (b1, b2) = split_branches(&back);
    let result = weighted_two_branch_reconstruct(&b1, &b2)?;
    println!("branch weights {:.4?}", result.weights);
    println!(
        "ρ = [[{:.4}, {:.4}], [{:.4}, {:.4}]]",
        result.rho.get(0, 0).re,
        result.rho.get(0, 1).re,
        result.rho.get(1, 0).re,
        result.rho.get(1, 1).re
    );
    Ok(())
}
