//! End-to-end simulation of the two-terminal test: a uniform source `x`, side information
//! `y = x ⊕ w`, minimum-distance quantization of `x` through the coset leader table, and the
//! threshold decision on `d_H(x_q, y)`.
//!
//! Trials are split into fixed-size blocks; block `b` draws from a ChaCha8 stream keyed by
//! `(seed, b)`, so results do not depend on how blocks are scheduled across threads.

use rand::distributions::{Bernoulli, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};
use crate::error_model::{alpha_exact, beta_exact, check_p0, P1};
use crate::gf2::{low_mask, BitVector};
use crate::spectrum::{CosetLeaderSpectrum, CosetLeaderTable};

/// Trials per RNG stream.
pub const BLOCK_TRIALS: u64 = 1 << 14;

/// Standard deviations used for the reported confidence interval.
pub const CI_SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hypothesis {
    H0,
    H1,
}

impl std::str::FromStr for Hypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H0" | "h0" | "0" => Ok(Hypothesis::H0),
            "H1" | "h1" | "1" => Ok(Hypothesis::H1),
            other => Err(out_of_range(format!(
                "unknown hypothesis `{other}` (expected H0 or H1)"
            ))),
        }
    }
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Hypothesis::H0 => "H0",
            Hypothesis::H1 => "H1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationConfig {
    pub p0: f64,
    pub gamma_t: usize,
    pub trials: u64,
    pub seed: u64,
    pub hypothesis: Hypothesis,
}

impl SimulationConfig {
    fn validate(&self, n: usize) -> Result<()> {
        check_p0(self.p0)?;
        if self.trials == 0 {
            return Err(out_of_range("trials must be at least 1"));
        }
        if self.gamma_t > n {
            return Err(out_of_range(format!(
                "gamma_t = {} exceeds n = {n}",
                self.gamma_t
            )));
        }
        Ok(())
    }

    /// Crossover probability of the noise under the simulated hypothesis.
    pub fn crossover(&self) -> f64 {
        match self.hypothesis {
            Hypothesis::H0 => self.p0,
            Hypothesis::H1 => P1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmpiricalEstimate {
    pub errors: u64,
    pub trials: u64,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Wilson score interval for `successes / trials` at `z` standard deviations.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let low = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let high = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (low.min(p), high.max(p))
}

/// Standardized deviation of an observed rate from an analytic probability.
pub fn z_score(rate: f64, analytic: f64, trials: u64) -> f64 {
    let var = analytic * (1.0 - analytic) / trials as f64;
    if var == 0.0 {
        if rate == analytic {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (rate - analytic) / var.sqrt()
    }
}

/// Nearest codeword to `x`: `x ⊕ leader(syndrome(x))`.
pub fn md_quantize(table: &CosetLeaderTable, x: &BitVector) -> Result<BitVector> {
    let leader = table.leader_of(x)?;
    *x ^ leader
}

fn run_block(
    table: &CosetLeaderTable,
    config: &SimulationConfig,
    block: u64,
    histogram: &mut [u64],
) {
    let n = table.n();
    let mask = low_mask(n);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(block);
    let start = block * BLOCK_TRIALS;
    let count = BLOCK_TRIALS.min(config.trials - start);
    let p = config.crossover();
    let bernoulli = Bernoulli::new(p).expect("p in [0, 1/2]");
    for _ in 0..count {
        let x: u64 = rng.gen::<u64>() & mask;
        let w: u64 = if p == 0.5 {
            rng.gen::<u64>() & mask
        } else if p == 0.0 {
            0
        } else {
            (0..n).fold(0u64, |acc, j| {
                acc | (u64::from(bernoulli.sample(&mut rng)) << j)
            })
        };
        let y = x ^ w;
        let x_q = x ^ table.leader(table.syndrome_word(x));
        histogram[(x_q ^ y).count_ones() as usize] += 1;
    }
}

/// Histogram of the test statistic `d_H(x_q, y)` over all trials (index = statistic value).
pub fn statistic_histogram(
    table: &CosetLeaderTable,
    config: &SimulationConfig,
) -> Result<Vec<u64>> {
    config.validate(table.n())?;
    let n = table.n();
    let blocks = config.trials.div_ceil(BLOCK_TRIALS);
    let histogram = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut h = vec![0u64; n + 1];
            run_block(table, config, b, &mut h);
            h
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(histogram)
}

/// Error frequency: deciding `H1` under `H0`, or `H0` under `H1`.
pub fn simulate(table: &CosetLeaderTable, config: &SimulationConfig) -> Result<EmpiricalEstimate> {
    let histogram = statistic_histogram(table, config)?;
    let (accept, reject) = histogram.split_at(config.gamma_t + 1);
    let errors: u64 = match config.hypothesis {
        Hypothesis::H0 => reject.iter().sum(),
        Hypothesis::H1 => accept.iter().sum(),
    };
    let rate = errors as f64 / config.trials as f64;
    let (ci_low, ci_high) = wilson_interval(errors, config.trials, CI_SIGMAS);
    Ok(EmpiricalEstimate {
        errors,
        trials: config.trials,
        rate,
        ci_low,
        ci_high,
    })
}

/// Simulation result paired with the analytic error probability.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub code: String,
    pub p0: f64,
    pub gamma_t: usize,
    pub hypothesis: Hypothesis,
    pub trials: u64,
    pub seed: u64,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub analytic: f64,
    pub z_score: f64,
}

impl SimulationReport {
    pub fn new(
        code: impl Into<String>,
        spectrum: &CosetLeaderSpectrum,
        config: &SimulationConfig,
        estimate: &EmpiricalEstimate,
    ) -> Result<Self> {
        let analytic = analytic_error(spectrum, config)?;
        Ok(SimulationReport {
            code: code.into(),
            p0: config.p0,
            gamma_t: config.gamma_t,
            hypothesis: config.hypothesis,
            trials: config.trials,
            seed: config.seed,
            rate: estimate.rate,
            ci_low: estimate.ci_low,
            ci_high: estimate.ci_high,
            analytic,
            z_score: z_score(estimate.rate, analytic, config.trials),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// The error probability the simulation estimates: `α_n` under `H0`, `β_n` under `H1`.
pub fn analytic_error(spectrum: &CosetLeaderSpectrum, config: &SimulationConfig) -> Result<f64> {
    match config.hypothesis {
        Hypothesis::H0 => alpha_exact(spectrum, config.p0, config.gamma_t),
        Hypothesis::H1 => beta_exact(spectrum, config.gamma_t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_lookup;
    use crate::spectrum::enumerate_spectrum;

    fn hamming_table() -> (CosetLeaderSpectrum, CosetLeaderTable) {
        let (s, t) = enumerate_spectrum(&catalog_lookup("hamming_7_4").unwrap(), true).unwrap();
        (s, t.unwrap())
    }

    #[test]
    fn quantize_codeword_and_single_errors() {
        let code = catalog_lookup("hamming_7_4").unwrap();
        let (_, table) = hamming_table();
        for c in code.codewords() {
            let cv = BitVector::new(7, c).unwrap();
            assert_eq!(md_quantize(&table, &cv).unwrap(), cv);
            for j in 0..7 {
                let x = BitVector::new(7, c ^ (1 << j)).unwrap();
                assert_eq!(md_quantize(&table, &x).unwrap(), cv);
            }
        }
        assert!(md_quantize(&table, &BitVector::zero(6).unwrap()).is_err());
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 100, 3.0);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.1);
        let (lo, hi) = wilson_interval(100, 100, 3.0);
        assert_eq!(hi, 1.0);
        assert!(lo < 1.0);
        let (lo, hi) = wilson_interval(500, 1000, 3.0);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!((hi - lo - 2.0 * 3.0 * (0.25f64 / 1000.0).sqrt()).abs() < 2e-3);
    }

    #[test]
    fn noiseless_rate_is_exact() {
        let (_, table) = hamming_table();
        let config = SimulationConfig {
            p0: 0.0,
            gamma_t: 1,
            trials: 10_000,
            seed: 1,
            hypothesis: Hypothesis::H0,
        };
        // statistic equals leader weight <= 1
        assert_eq!(simulate(&table, &config).unwrap().errors, 0);
    }

    #[test]
    fn deterministic_and_block_aligned() {
        let (_, table) = hamming_table();
        let config = SimulationConfig {
            p0: 0.05,
            gamma_t: 2,
            trials: 3 * BLOCK_TRIALS + 17,
            seed: 42,
            hypothesis: Hypothesis::H0,
        };
        let a = simulate(&table, &config).unwrap();
        let b = simulate(&table, &config).unwrap();
        assert_eq!(a, b);
        let h = statistic_histogram(&table, &config).unwrap();
        assert_eq!(h.iter().sum::<u64>(), config.trials);
    }

    #[test]
    fn invalid_configs() {
        let (_, table) = hamming_table();
        let mut config = SimulationConfig {
            p0: 0.05,
            gamma_t: 2,
            trials: 0,
            seed: 0,
            hypothesis: Hypothesis::H1,
        };
        assert!(simulate(&table, &config).is_err());
        config.trials = 10;
        config.gamma_t = 8;
        assert!(simulate(&table, &config).is_err());
        config.gamma_t = 2;
        config.p0 = 0.5;
        assert!(simulate(&table, &config).is_err());
    }

    #[test]
    fn z_score_edge_cases() {
        assert_eq!(z_score(0.0, 0.0, 10), 0.0);
        assert_eq!(z_score(0.1, 0.0, 10), f64::INFINITY);
        assert!((z_score(0.51, 0.5, 10_000) - 2.0).abs() < 1e-9);
    }
}
