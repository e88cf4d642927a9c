//! Simulated error rates of the Golay quantizer next to the exact values.
//!
//! cargo run --release --example monte_carlo -- 1000000

use coset_dht::montecarlo::{analytic_error, z_score};
use coset_dht::{catalog_lookup, enumerate_spectrum, simulate, Hypothesis, SimulationConfig};

fn main() -> coset_dht::Result<()> {
    let trials: u64 = std::env::args()
        .nth(1)
        .map_or(200_000, |s| s.parse().expect("trial count"));
    let (spectrum, table) = enumerate_spectrum(&catalog_lookup("golay_23_12")?, true)?;
    let table = table.expect("table requested");
    for hypothesis in [Hypothesis::H0, Hypothesis::H1] {
        for gamma_t in [3, 5, 7] {
            let config = SimulationConfig {
                p0: 0.05,
                gamma_t,
                trials,
                seed: 1,
                hypothesis,
            };
            let estimate = simulate(&table, &config)?;
            let exact = analytic_error(&spectrum, &config)?;
            println!(
                "{hypothesis} gamma_t={gamma_t} rate={:.3e} [{:.3e}, {:.3e}] exact={exact:.3e} z={:+.2}",
                estimate.rate,
                estimate.ci_low,
                estimate.ci_high,
                z_score(estimate.rate, exact, trials)
            );
        }
    }
    Ok(())
}
