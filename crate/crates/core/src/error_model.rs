//! Exact Type-I / Type-II error probabilities of the minimum-distance quantizer followed by
//! the threshold test `d_H(x_q, y) <= γ_t ⇒ H0`.
//!
//! For a coset leader of weight `i` and a noise vector of weight `γ` sharing `u` ones with
//! the leader, the statistic equals `j = i + γ - 2u`. The number of such noise vectors is
//! `Γ(γ, i, u) = C(i, u) · C(n - i, γ - u)`.

use serde::Serialize;

use crate::combin::{binomial, kahan_sum, log2_sum_exp2, LnFactorials};
use crate::error::{out_of_range, Error, Result};
use crate::numfmt::fmt_sig;
use crate::spectrum::CosetLeaderSpectrum;

/// Crossover probability under the independence hypothesis.
pub const P1: f64 = 0.5;

/// The two hypotheses: `H0` with crossover `p0`, `H1` with crossover 1/2, and the Type-I
/// budget `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypothesisConfig {
    pub p0: f64,
    pub p1: f64,
    pub epsilon: f64,
}

impl HypothesisConfig {
    pub fn new(p0: f64, epsilon: f64) -> Result<Self> {
        check_p0(p0)?;
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(out_of_range(format!("epsilon = {epsilon} outside (0, 1)")));
        }
        Ok(HypothesisConfig {
            p0,
            p1: P1,
            epsilon,
        })
    }
}

pub(crate) fn check_p0(p0: f64) -> Result<()> {
    if !(0.0..0.5).contains(&p0) {
        return Err(out_of_range(format!("p0 = {p0} outside [0, 1/2)")));
    }
    Ok(())
}

fn check_threshold(n: usize, gamma_t: usize) -> Result<()> {
    if gamma_t > n {
        return Err(out_of_range(format!("gamma_t = {gamma_t} exceeds n = {n}")));
    }
    Ok(())
}

/// `Γ(γ, i, u) = C(i, u) · C(n - i, γ - u)`.
pub fn gamma_coefficient(n: usize, gamma: usize, i: usize, u: usize) -> Result<u128> {
    if i > n || gamma > n || u > gamma.min(i) || gamma - u > n - i {
        return Err(out_of_range(format!(
            "Gamma(n={n}, gamma={gamma}, i={i}, u={u}) outside its domain"
        )));
    }
    Ok(binomial(i as u64, u as u64) * binomial((n - i) as u64, (gamma - u) as u64))
}

/// Valid `u` for given `(n, γ, i)`: `max(0, γ - (n - i)) ..= min(γ, i)`.
fn u_range(n: usize, gamma: usize, i: usize) -> std::ops::RangeInclusive<usize> {
    gamma.saturating_sub(n - i)..=gamma.min(i)
}

/// Probability mass of the statistic `d_H(leader ⊕ w, 0)` over `γ = 0..=n` when the leader
/// has weight `i` and `w` is i.i.d. Bernoulli(`p0`): entry `γ` collects the noise vectors
/// of weight `γ`.
pub fn statistic_kernel(n: usize, i: usize, p0: f64) -> Result<Vec<f64>> {
    check_p0(p0)?;
    if i > n || n > 64 {
        return Err(out_of_range(format!(
            "leader weight {i} invalid for n = {n}"
        )));
    }
    let ln_p = p0.ln();
    let ln_q = (1.0 - p0).ln();
    let kernel = (0..=n)
        .map(|gamma| {
            kahan_sum(u_range(n, gamma, i).map(|u| {
                let j = i + gamma - 2 * u;
                let count = gamma_coefficient(n, gamma, i, u).expect("u in range") as f64;
                if p0 == 0.0 {
                    if j == 0 {
                        count
                    } else {
                        0.0
                    }
                } else {
                    count * (j as f64 * ln_p + (n - j) as f64 * ln_q).exp()
                }
            }))
        })
        .collect();
    Ok(kernel)
}

/// `W_α(i)` for `i = 0..=rho`: probability that the statistic exceeds `γ_t` given a
/// weight-`i` leader.
pub fn alpha_weights(n: usize, rho: usize, p0: f64, gamma_t: usize) -> Result<Vec<f64>> {
    check_threshold(n, gamma_t)?;
    (0..=rho)
        .map(|i| {
            Ok(kahan_sum(
                statistic_kernel(n, i, p0)?[gamma_t + 1..].iter().copied(),
            ))
        })
        .collect()
}

/// Complement of [`alpha_weights`], summed directly over `γ <= γ_t` so it keeps full
/// relative precision when `W_α` is close to one.
pub fn acceptance_weights(n: usize, rho: usize, p0: f64, gamma_t: usize) -> Result<Vec<f64>> {
    check_threshold(n, gamma_t)?;
    (0..=rho)
        .map(|i| {
            Ok(kahan_sum(
                statistic_kernel(n, i, p0)?[..=gamma_t].iter().copied(),
            ))
        })
        .collect()
}

/// `W_β(i)` for `i = 0..=rho`, from the full double sum of `Γ` counts.
pub fn beta_weights(n: usize, rho: usize, gamma_t: usize) -> Result<Vec<f64>> {
    check_threshold(n, gamma_t)?;
    if rho > n || n > 64 {
        return Err(out_of_range(format!("rho = {rho} invalid for n = {n}")));
    }
    let scale = (-(n as f64)).exp2();
    Ok((0..=rho)
        .map(|i| {
            let count: u128 = (0..=gamma_t)
                .flat_map(|gamma| {
                    u_range(n, gamma, i)
                        .map(move |u| gamma_coefficient(n, gamma, i, u).expect("u in range"))
                })
                .sum();
            count as f64 * scale
        })
        .collect())
}

fn weighted_average(spectrum: &CosetLeaderSpectrum, weights: &[f64]) -> f64 {
    let total = spectrum.num_cosets() as f64;
    kahan_sum(
        spectrum
            .counts()
            .iter()
            .zip(weights)
            .map(|(&count, &w)| w * count as f64),
    ) / total
}

/// Type-I error `α_n = (1/N) Σ W_α(i) N_i`.
pub fn alpha_exact(spectrum: &CosetLeaderSpectrum, p0: f64, gamma_t: usize) -> Result<f64> {
    let weights = alpha_weights(spectrum.n(), spectrum.rho(), p0, gamma_t)?;
    Ok(weighted_average(spectrum, &weights))
}

/// Type-II error `β_n = (1/N) Σ W_β(i) N_i`, evaluated through the weight decomposition.
pub fn beta_exact(spectrum: &CosetLeaderSpectrum, gamma_t: usize) -> Result<f64> {
    let weights = beta_weights(spectrum.n(), spectrum.rho(), gamma_t)?;
    Ok(weighted_average(spectrum, &weights))
}

/// Closed form `β_n = 2^{-n} Σ_{γ <= γ_t} C(n, γ)`; it does not depend on the code.
pub fn beta_closed_form(n: usize, gamma_t: usize) -> Result<f64> {
    check_threshold(n, gamma_t)?;
    if n > 127 {
        return Ok(beta_closed_form_log2(n, gamma_t)?.exp2());
    }
    let count: u128 = (0..=gamma_t).map(|g| binomial(n as u64, g as u64)).sum();
    Ok(count as f64 * (-(n as f64)).exp2())
}

/// `log2` of [`beta_closed_form`], valid for any block length.
pub fn beta_closed_form_log2(n: usize, gamma_t: usize) -> Result<f64> {
    check_threshold(n, gamma_t)?;
    let lf = LnFactorials::new(n);
    let terms = (0..=gamma_t).map(|g| lf.ln_binomial(n, g) / std::f64::consts::LN_2);
    Ok(log2_sum_exp2(terms) - n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorPair {
    pub gamma_t: usize,
    pub alpha: f64,
    pub beta: f64,
}

/// One [`ErrorPair`] per threshold `γ_t = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorCurve {
    pub points: Vec<ErrorPair>,
}

impl ErrorCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("gamma_t,alpha,beta\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{}\n",
                p.gamma_t,
                fmt_sig(p.alpha),
                fmt_sig(p.beta)
            ));
        }
        out
    }

    /// Checks ranges and monotonicity along the curve.
    pub fn check(&self) -> Result<()> {
        for p in &self.points {
            if !(0.0..=1.0).contains(&p.alpha) || !(0.0..=1.0).contains(&p.beta) {
                return Err(Error::Invariant(format!(
                    "probability out of [0,1] at gamma_t = {}",
                    p.gamma_t
                )));
            }
        }
        for w in self.points.windows(2) {
            // allow rounding noise of a few ulps
            if w[1].alpha > w[0].alpha * (1.0 + 1e-12) || w[1].beta < w[0].beta * (1.0 - 1e-12) {
                return Err(Error::Invariant(format!(
                    "error curve not monotone between gamma_t = {} and {}",
                    w[0].gamma_t, w[1].gamma_t
                )));
            }
        }
        Ok(())
    }
}

pub fn roc_curve(spectrum: &CosetLeaderSpectrum, p0: f64) -> Result<ErrorCurve> {
    let n = spectrum.n();
    let kernels = (0..=spectrum.rho())
        .map(|i| statistic_kernel(n, i, p0))
        .collect::<Result<Vec<_>>>()?;
    let points = (0..=n)
        .map(|gamma_t| {
            let w_alpha: Vec<f64> = kernels
                .iter()
                .map(|k| kahan_sum(k[gamma_t + 1..].iter().copied()))
                .collect();
            Ok(ErrorPair {
                gamma_t,
                alpha: weighted_average(spectrum, &w_alpha),
                beta: beta_exact(spectrum, gamma_t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let curve = ErrorCurve { points };
    curve.check()?;
    Ok(curve)
}
