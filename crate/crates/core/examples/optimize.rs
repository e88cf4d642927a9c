//! Threshold and spectrum optimization for several code dimensions.
//!
//! cargo run --example optimize -- 0.05 0.06

use coset_dht::optimize_threshold;

fn main() -> coset_dht::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<f64>().expect("numeric argument"));
    let p0 = args.next().unwrap_or(0.05);
    let epsilon = args.next().unwrap_or(0.06);
    for (n, k) in [
        (7, 4),
        (8, 4),
        (15, 11),
        (16, 5),
        (23, 12),
        (24, 12),
        (31, 11),
        (31, 26),
    ] {
        let outcome = optimize_threshold(n, k, p0, epsilon)?;
        println!(
            "[{n},{k}] gamma_t*={} rho*={} alpha={:.6} beta={:.6} counts={:?}",
            outcome.gamma_t_star,
            outcome.rho_star(),
            outcome.alpha_achieved,
            outcome.beta_achieved,
            outcome.spectrum_star.counts()
        );
        println!("    {}", outcome.covering_note());
    }
    Ok(())
}
