//! Lower and upper bounds around the exact error probabilities of the BCH [31,11] code.
//!
//! cargo run --example bounds

use coset_dht::exponents::bounds_sweep;
use coset_dht::{catalog_lookup, enumerate_spectrum};

fn main() -> coset_dht::Result<()> {
    let (spectrum, _) = enumerate_spectrum(&catalog_lookup("bch_31_11")?, false)?;
    println!("gamma_t  alpha_lo   alpha      alpha_hi   | beta_lo    beta       beta_hi");
    let sci = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.3e}"));
    for r in bounds_sweep(&spectrum, 0.05)? {
        println!(
            "{:>7}  {:<10} {:<10} {:<10} | {:<10} {:<10} {:<10}",
            r.gamma_t,
            sci(r.alpha_bounds.map(|b| b.lower())),
            sci(Some(r.alpha)),
            sci(r.alpha_bounds.map(|b| b.upper())),
            sci(r.beta_bounds.map(|b| b.lower())),
            sci(Some(r.beta)),
            sci(r.beta_bounds.map(|b| b.upper())),
        );
    }
    Ok(())
}
