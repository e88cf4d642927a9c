//! Exact error analysis for distributed hypothesis testing with binary linear code
//! quantizers.
//!
//! A source `x` is quantized to its nearest codeword `x_q`; the receiver holds `y = x ⊕ w`
//! with `w ~ Bern(p0)^n` under `H0` and `w ~ Bern(1/2)^n` under `H1`, and decides `H0`
//! when `d_H(x_q, y) <= gamma_t`. Both error probabilities depend on the code only through
//! its coset leader spectrum `N_0, ..., N_rho`.

pub mod catalog;
pub mod cli;
pub mod code;
pub mod combin;
pub mod error;
pub mod error_model;
pub mod exponents;
pub mod gf2;
pub mod montecarlo;
pub mod numfmt;
pub mod optimize;
pub mod spectrum;

pub use catalog::{catalog_lookup, CATALOG};
pub use code::{parse_generator, BinaryLinearCode};
pub use error::{Error, Result};
pub use error_model::{
    alpha_exact, beta_closed_form, beta_exact, roc_curve, ErrorCurve, ErrorPair,
};
pub use exponents::{
    alpha_bounds, beta_bounds, binary_entropy, binary_kl, exponents, tradeoff_curve,
};
pub use gf2::{BitMatrix, BitVector};
pub use montecarlo::{simulate, Hypothesis, SimulationConfig};
pub use optimize::{optimize_threshold, solve_ilp, IlpInstance, OptimizationOutcome};
pub use spectrum::{enumerate_spectrum, CosetLeaderSpectrum, CosetLeaderTable};
