//! Coset leader spectrum optimization.
//!
//! For a fixed threshold the Type-I error is linear in the spectrum, so choosing the
//! hypothetical spectrum is an integer program over a box (`0 <= N_i <= C(n, i)`) intersected
//! with one equality (`Σ N_i = 2^(n-k) - 1`). Filling the cheapest weights first is exact for
//! that polytope. The threshold loop then raises `γ_t` until the Type-I budget is met.

use serde::Serialize;

use crate::combin::{binomial, kahan_sum};
use crate::error::{out_of_range, Error, Result};
use crate::error_model::{alpha_exact, alpha_weights, beta_closed_form, check_p0};
use crate::spectrum::{sphere_covering_radius, CosetLeaderSpectrum};

/// `min Σ weights[i] · x[i]` subject to `0 <= x[i] <= capacities[i]`, `Σ x[i] = total`.
///
/// Index `0` here corresponds to leader weight 1; `N_0 = 1` is fixed outside the program.
#[derive(Debug, Clone, PartialEq)]
pub struct IlpInstance {
    weights: Vec<f64>,
    capacities: Vec<u64>,
    total: u64,
}

impl IlpInstance {
    pub fn new(weights: Vec<f64>, capacities: Vec<u64>, total: u64) -> Result<Self> {
        if weights.len() != capacities.len() {
            return Err(Error::LengthMismatch {
                expected: weights.len(),
                got: capacities.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(out_of_range("ILP weights must be finite and nonnegative"));
        }
        if capacities.contains(&0) {
            return Err(out_of_range("ILP capacities must be at least 1"));
        }
        Ok(IlpInstance {
            weights,
            capacities,
            total,
        })
    }

    /// The instance for an `[n, k]` hypothetical code with leader weights `1..=rho`.
    pub fn for_code(n: usize, k: usize, rho: usize, p0: f64, gamma_t: usize) -> Result<Self> {
        if !(k <= n && n <= 64 && n - k <= 63) || rho == 0 || rho > n {
            return Err(out_of_range(format!(
                "invalid ILP parameters n={n}, k={k}, rho={rho}"
            )));
        }
        let w_alpha = alpha_weights(n, rho, p0, gamma_t)?;
        let capacities = (1..=rho)
            .map(|i| {
                u64::try_from(binomial(n as u64, i as u64)).expect("C(n,i) fits u64 for n <= 64")
            })
            .collect();
        Self::new(w_alpha[1..].to_vec(), capacities, (1u64 << (n - k)) - 1)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn capacities(&self) -> &[u64] {
        &self.capacities
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn objective(&self, point: &[u64]) -> f64 {
        kahan_sum(self.weights.iter().zip(point).map(|(w, &x)| w * x as f64))
    }

    fn check_feasible(&self) -> Result<()> {
        let capacity: u128 = self.capacities.iter().map(|&c| u128::from(c)).sum();
        if capacity < u128::from(self.total) {
            return Err(Error::Infeasible {
                capacity,
                total: self.total,
            });
        }
        Ok(())
    }
}

/// Greedy fill in ascending weight order, ties to the lower index.
pub fn solve_ilp(instance: &IlpInstance) -> Result<Vec<u64>> {
    instance.check_feasible()?;
    let mut order: Vec<usize> = (0..instance.weights.len()).collect();
    order.sort_by(|&a, &b| {
        instance.weights[a]
            .total_cmp(&instance.weights[b])
            .then(a.cmp(&b))
    });
    let mut remaining = instance.total;
    let mut point = vec![0u64; instance.weights.len()];
    for idx in order {
        if remaining == 0 {
            break;
        }
        let take = instance.capacities[idx].min(remaining);
        point[idx] = take;
        remaining -= take;
    }
    Ok(point)
}

/// Upper limit on `Π (capacity_i + 1)` accepted by [`bruteforce_ilp`].
pub const BRUTEFORCE_LIMIT: u128 = 10_000_000;

/// Exhaustive search over every feasible integer point.
///
/// Among optimal points, returns the lexicographically largest one, which coincides with
/// the greedy tie rule.
pub fn bruteforce_ilp(instance: &IlpInstance) -> Result<Vec<u64>> {
    let points = instance
        .capacities
        .iter()
        .try_fold(1u128, |acc, &c| acc.checked_mul(u128::from(c) + 1))
        .unwrap_or(u128::MAX);
    if points > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge { points });
    }
    instance.check_feasible()?;

    let dims = instance.capacities.len();
    let mut best: Option<(f64, Vec<u64>)> = None;
    let mut current = vec![0u64; dims];
    loop {
        if current.iter().sum::<u64>() == instance.total {
            let value = instance.objective(&current);
            let better = match &best {
                None => true,
                Some((bv, bp)) => value < *bv || (value == *bv && current > *bp),
            };
            if better {
                best = Some((value, current.clone()));
            }
        }
        // odometer increment
        let mut d = 0;
        while d < dims {
            if current[d] < instance.capacities[d] {
                current[d] += 1;
                break;
            }
            current[d] = 0;
            d += 1;
        }
        if d == dims {
            break;
        }
    }
    Ok(best.map(|(_, p)| p).unwrap_or_default())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationOutcome {
    pub n: usize,
    pub k: usize,
    pub p0: f64,
    pub epsilon: f64,
    pub gamma_t_star: usize,
    pub spectrum_star: CosetLeaderSpectrum,
    pub alpha_achieved: f64,
    pub beta_achieved: f64,
    pub iterations: usize,
}

#[derive(Serialize)]
struct OutcomeJson<'a> {
    n: usize,
    k: usize,
    p0: f64,
    epsilon: f64,
    gamma_t_star: usize,
    rho_star: usize,
    counts: &'a [u64],
    alpha: f64,
    beta: f64,
}

impl OptimizationOutcome {
    pub fn rho_star(&self) -> usize {
        self.spectrum_star.rho()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&OutcomeJson {
            n: self.n,
            k: self.k,
            p0: self.p0,
            epsilon: self.epsilon,
            gamma_t_star: self.gamma_t_star,
            rho_star: self.rho_star(),
            counts: self.spectrum_star.counts(),
            alpha: self.alpha_achieved,
            beta: self.beta_achieved,
        })
        .expect("outcome serializes")
    }

    /// Human-readable comparison of `ρ*` with the sphere-covering minimum.
    pub fn covering_note(&self) -> String {
        let rho = self.rho_star();
        let minimum = sphere_covering_radius(self.n, self.k);
        let mut note = if rho == minimum {
            format!(
                "[{},{}]: optimized rho* = {rho} meets the sphere-covering minimum",
                self.n, self.k
            )
        } else {
            format!(
                "[{},{}]: optimized rho* = {rho} differs from the sphere-covering minimum {minimum}",
                self.n, self.k
            )
        };
        if let Some(published) = published_rho_star(self.n, self.k) {
            if published != rho {
                note.push_str(&format!(
                    "; the published reference value is rho* = {published}"
                ));
            }
        }
        note
    }
}

/// Optimized covering radii reported in the literature for `p0 = 0.05`, `epsilon = 0.06`.
pub const PUBLISHED_RHO_STAR: &[(usize, usize, usize)] = &[
    (7, 4, 1),
    (8, 4, 2),
    (15, 11, 1),
    (16, 5, 5),
    (23, 12, 3),
    (24, 12, 4),
    (31, 11, 7),
    (31, 26, 1),
];

pub fn published_rho_star(n: usize, k: usize) -> Option<usize> {
    PUBLISHED_RHO_STAR
        .iter()
        .find(|&&(pn, pk, _)| (pn, pk) == (n, k))
        .map(|&(_, _, r)| r)
}

/// Optimal hypothetical spectrum (with `N_0 = 1`, trailing zeros trimmed) for one threshold.
pub fn optimal_spectrum(
    n: usize,
    k: usize,
    p0: f64,
    gamma_t: usize,
) -> Result<CosetLeaderSpectrum> {
    let instance = IlpInstance::for_code(n, k, n - k, p0, gamma_t)?;
    let mut counts = vec![1u64];
    counts.extend(solve_ilp(&instance)?);
    CosetLeaderSpectrum::from_padded_counts(n, k, counts)
        .map_err(|e| Error::Invariant(format!("ILP produced an invalid spectrum: {e}")))
}

/// Raises `γ_t` from 0, re-solving the ILP at each step with `ρ = n - k`, and stops at the
/// first threshold whose optimal spectrum satisfies `α_n <= ε`.
pub fn optimize_threshold(
    n: usize,
    k: usize,
    p0: f64,
    epsilon: f64,
) -> Result<OptimizationOutcome> {
    check_p0(p0)?;
    // epsilon = 1 is admitted as the degenerate budget that accepts gamma_t = 0
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(out_of_range(format!("epsilon = {epsilon} outside (0, 1]")));
    }
    if !(1 <= k && k < n && n <= 64) {
        return Err(Error::InvalidDimensions { n, k });
    }
    for gamma_t in 0..=n {
        let spectrum = optimal_spectrum(n, k, p0, gamma_t)?;
        let alpha = alpha_exact(&spectrum, p0, gamma_t)?;
        if alpha <= epsilon {
            return Ok(OptimizationOutcome {
                n,
                k,
                p0,
                epsilon,
                gamma_t_star: gamma_t,
                spectrum_star: spectrum,
                alpha_achieved: alpha,
                beta_achieved: beta_closed_form(n, gamma_t)?,
                iterations: gamma_t + 1,
            });
        }
    }
    Err(Error::Invariant(
        "alpha did not reach zero at gamma_t = n".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instance_greedy_and_bruteforce() {
        let inst = IlpInstance::new(vec![5.0, 1.0, 3.0], vec![2, 2, 2], 4).unwrap();
        let greedy = solve_ilp(&inst).unwrap();
        assert_eq!(greedy, vec![0, 2, 2]);
        assert_eq!(inst.objective(&greedy), 8.0);
        assert_eq!(bruteforce_ilp(&inst).unwrap(), greedy);
    }

    #[test]
    fn trivial_instances() {
        let inst = IlpInstance::new(vec![1.0, 2.0], vec![3, 3], 0).unwrap();
        assert_eq!(bruteforce_ilp(&inst).unwrap(), vec![0, 0]);
        assert_eq!(solve_ilp(&inst).unwrap(), vec![0, 0]);
        let inst = IlpInstance::new(vec![0.7], vec![9], 9).unwrap();
        assert_eq!(bruteforce_ilp(&inst).unwrap(), vec![9]);
        assert_eq!(solve_ilp(&inst).unwrap(), vec![9]);
    }

    #[test]
    fn infeasible_and_too_large() {
        let inst = IlpInstance::new(vec![1.0, 1.0], vec![1, 2], 4).unwrap();
        assert!(matches!(solve_ilp(&inst), Err(Error::Infeasible { .. })));
        assert!(matches!(
            bruteforce_ilp(&inst),
            Err(Error::Infeasible { .. })
        ));
        let inst = IlpInstance::new(vec![1.0; 6], vec![100; 6], 10).unwrap();
        assert!(matches!(bruteforce_ilp(&inst), Err(Error::TooLarge { .. })));
        assert!(IlpInstance::new(vec![1.0], vec![0], 0).is_err());
        assert!(IlpInstance::new(vec![-1.0], vec![1], 0).is_err());
    }

    #[test]
    fn ties_go_to_lower_index() {
        let inst = IlpInstance::new(vec![1.0, 1.0, 0.5], vec![2, 2, 1], 3).unwrap();
        assert_eq!(solve_ilp(&inst).unwrap(), vec![2, 0, 1]);
        assert_eq!(bruteforce_ilp(&inst).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn table_one_shapes() {
        let inst = IlpInstance::for_code(7, 4, 3, 0.05, 2).unwrap();
        assert_eq!(solve_ilp(&inst).unwrap(), vec![7, 0, 0]);
        let inst = IlpInstance::for_code(24, 12, 12, 0.05, 3).unwrap();
        let point = solve_ilp(&inst).unwrap();
        assert_eq!(&point[..4], &[24, 276, 2024, 1771]);
        assert!(point[4..].iter().all(|&x| x == 0));
    }

    #[test]
    fn threshold_search_hamming() {
        let out = optimize_threshold(7, 4, 0.05, 0.06).unwrap();
        assert_eq!(out.gamma_t_star, 2);
        assert_eq!(out.spectrum_star.counts(), &[1, 7]);
        assert!((out.beta_achieved - 29.0 / 128.0).abs() < 1e-16);
        assert!(out.alpha_achieved <= 0.06);
        assert_eq!(out.iterations, 3);
        let json = out.to_json();
        assert!(json.starts_with(r#"{"n":7,"k":4,"p0":0.05,"epsilon":0.06,"gamma_t_star":2,"rho_star":1,"counts":[1,7],"alpha":"#));

        let out = optimize_threshold(7, 4, 0.05, 1.0).unwrap();
        assert_eq!(out.gamma_t_star, 0);
    }

    #[test]
    fn threshold_search_rejects_bad_ranges() {
        assert!(optimize_threshold(7, 4, 0.5, 0.06).is_err());
        assert!(optimize_threshold(7, 4, 0.05, 0.0).is_err());
        assert!(optimize_threshold(7, 7, 0.05, 0.06).is_err());
    }
}
