//! Asymptotic exponent tradeoff and how fast finite block lengths approach it.
//!
//! cargo run --example exponents

use coset_dht::exponents::{exponent_convergence_report, parse_grid, tradeoff_csv};
use coset_dht::tradeoff_curve;

fn main() -> coset_dht::Result<()> {
    for p0 in [0.05, 0.2] {
        let grid = parse_grid(&format!("{p0}:0.5:10"))?;
        println!("p0 = {p0}");
        print!("{}", tradeoff_csv(&tradeoff_curve(p0, &grid)?));
    }

    println!("\nt = 0.3, p0 = 0.05");
    for row in exponent_convergence_report(0.3, 0.05, &[20, 100, 500, 1000, 5000])? {
        println!(
            "n={:>5} beta exponent {:.5} (limit {:.5}, gap {:.5})",
            row.n, row.beta_exponent, row.e1, row.beta_gap
        );
    }
    Ok(())
}
