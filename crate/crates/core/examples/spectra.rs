//! Coset leader spectra of every catalog code.
//!
//! cargo run --example spectra

use coset_dht::spectrum::{covering_radius, sphere_covering_radius};
use coset_dht::{catalog_lookup, enumerate_spectrum, CATALOG};

fn main() -> coset_dht::Result<()> {
    println!(
        "{:<16} {:>3} {:>3} {:>4} {:>6}  counts",
        "code", "n", "k", "rho", "bound"
    );
    for &(name, n, k) in CATALOG {
        let (spectrum, _) = enumerate_spectrum(&catalog_lookup(name)?, false)?;
        println!(
            "{name:<16} {n:>3} {k:>3} {:>4} {:>6}  {:?}",
            covering_radius(&spectrum),
            sphere_covering_radius(n, k),
            spectrum.counts()
        );
    }
    Ok(())
}
