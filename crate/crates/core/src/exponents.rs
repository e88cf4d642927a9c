//! Error exponents and finite-length bounds on the Type-I and Type-II error probabilities.
//!
//! Both bounds rest on the binomial-tail inequality
//! `[8ns(1-s)]^{-1/2} 2^{-n D(s||p)} <= P(Bin(n, p) >= ns) <= 2^{-n D(s||p)}` for `p <= s < 1`.
//! Everything is evaluated in the log2 domain and exponentiated only on output.

use serde::Serialize;

use crate::combin::log2_sum_exp2;
use crate::error::{out_of_range, Error, Result};
use crate::error_model::{alpha_exact, beta_closed_form_log2, beta_exact};
use crate::numfmt::fmt_sig;
use crate::spectrum::CosetLeaderSpectrum;

fn xlog2x_ratio(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * (a / b).log2()
    }
}

/// `H_b(t)` in bits.
pub fn binary_entropy(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(out_of_range(format!("entropy argument {t} outside [0, 1]")));
    }
    let h = |x: f64| if x == 0.0 { 0.0 } else { -x * x.log2() };
    Ok(h(t) + h(1.0 - t))
}

/// `D_b(p || q)` in bits, with `0 · log 0 = 0`.
pub fn binary_kl(p: f64, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
        return Err(out_of_range(format!(
            "KL arguments ({p}, {q}) outside [0, 1]"
        )));
    }
    if (q == 0.0 || q == 1.0) && p != q {
        return Err(out_of_range(format!(
            "KL divergence D({p} || {q}) is infinite"
        )));
    }
    Ok(xlog2x_ratio(p, q) + xlog2x_ratio(1.0 - p, 1.0 - q))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentPoint {
    pub t: f64,
    pub e0: f64,
    pub e1: f64,
}

/// `(E0, E1) = (D_b(t || p0), 1 - H_b(t))` for `p0 <= t <= 1/2`.
pub fn exponents(t: f64, p0: f64) -> Result<ExponentPoint> {
    if !(0.0..0.5).contains(&p0) {
        return Err(out_of_range(format!("p0 = {p0} outside [0, 1/2)")));
    }
    if !(t >= p0 && t <= 0.5) {
        return Err(out_of_range(format!(
            "t = {t} outside [p0, 1/2] = [{p0}, 0.5]"
        )));
    }
    Ok(ExponentPoint {
        t,
        e0: binary_kl(t, p0)?,
        e1: 1.0 - binary_entropy(t)?,
    })
}

/// Parses `start:stop:count` into `count` evenly spaced points, endpoints included.
pub fn parse_grid(grid: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = grid.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(out_of_range(format!(
            "grid `{grid}` is not start:stop:count"
        )));
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| out_of_range(format!("invalid grid value `{s}`")))
    };
    let (start, stop) = (parse(start)?, parse(stop)?);
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| out_of_range(format!("invalid grid count `{count}`")))?;
    match count {
        0 => Err(out_of_range("grid count must be positive")),
        1 => Ok(vec![start]),
        _ => Ok((0..count)
            .map(|i| {
                if i == count - 1 {
                    stop
                } else {
                    start + (stop - start) * i as f64 / (count - 1) as f64
                }
            })
            .collect()),
    }
}

/// Exponent pairs along a grid of normalized thresholds.
pub fn tradeoff_curve(p0: f64, grid: &[f64]) -> Result<Vec<ExponentPoint>> {
    grid.iter().map(|&t| exponents(t, p0)).collect()
}

pub fn tradeoff_csv(points: &[ExponentPoint]) -> String {
    let mut out = String::from("t,E0,E1\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_sig(p.t),
            fmt_sig(p.e0),
            fmt_sig(p.e1)
        ));
    }
    out
}

/// Bounds on one error probability, in both linear and log2 form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lower_log2: f64,
    pub upper_log2: f64,
}

impl Interval {
    pub fn lower(&self) -> f64 {
        self.lower_log2.exp2()
    }

    pub fn upper(&self) -> f64 {
        self.upper_log2.exp2()
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower() <= value && value <= self.upper()
    }
}

/// Lower and upper bounds on `β_n` for `1 <= γ_t <= n/2`.
pub fn beta_bounds(n: usize, gamma_t: usize) -> Result<Interval> {
    if gamma_t == 0 || 2 * gamma_t > n {
        return Err(out_of_range(format!(
            "beta bounds need 1 <= gamma_t <= n/2 (gamma_t = {gamma_t}, n = {n})"
        )));
    }
    let s = gamma_t as f64 / n as f64;
    let upper_log2 = -(n as f64) * binary_kl(1.0 - s, 0.5)?;
    let lower_log2 = upper_log2 - 0.5 * (8.0 * gamma_t as f64 * (1.0 - s)).log2();
    Ok(Interval {
        lower_log2,
        upper_log2,
    })
}

/// Bounds on `α_n` together with the spectrum constants `Δ` and `Δ′` (log2 form).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaBounds {
    pub interval: Interval,
    pub delta_log2: f64,
    pub delta_prime_log2: f64,
}

impl AlphaBounds {
    pub fn lower(&self) -> f64 {
        self.interval.lower()
    }

    pub fn upper(&self) -> f64 {
        self.interval.upper()
    }

    pub fn delta(&self) -> f64 {
        self.delta_log2.exp2()
    }

    pub fn delta_prime(&self) -> f64 {
        self.delta_prime_log2.exp2()
    }
}

/// `log2 Δ` with `Δ = Σ_i κ^{-i/2} (κ^i - 1) N_i` and `κ = ((1-p0)/p0)^2`.
pub fn delta_log2(spectrum: &CosetLeaderSpectrum, p0: f64) -> Result<f64> {
    check_bound_p0(p0)?;
    // log2 κ^{1/2}
    let half_log_kappa = ((1.0 - p0) / p0).log2();
    let terms = spectrum
        .counts()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| {
            let i = i as f64;
            // κ^{i/2} - κ^{-i/2} = κ^{i/2} (1 - κ^{-i})
            (c as f64).log2()
                + i * half_log_kappa
                + (-(-2.0 * i * half_log_kappa).exp2()).ln_1p() / std::f64::consts::LN_2
        });
    Ok(log2_sum_exp2(terms))
}

/// `log2 Δ′` with `Δ′ = 4π² e^{-3} Σ_{i>=1} i^{-1/2} (p0/(1-p0))^{i+2} N_i`.
///
/// The `i = 0` term is singular (`(1/i)^{1/2}`) and is left out of the sum.
pub fn delta_prime_log2(spectrum: &CosetLeaderSpectrum, p0: f64) -> Result<f64> {
    check_bound_p0(p0)?;
    let ratio_log2 = (p0 / (1.0 - p0)).log2();
    let constant_log2 =
        (4.0 * std::f64::consts::PI.powi(2)).log2() - 3.0 * std::f64::consts::LOG2_E;
    let terms = spectrum
        .counts()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| (c as f64).log2() - 0.5 * (i as f64).log2() + (i as f64 + 2.0) * ratio_log2);
    Ok(constant_log2 + log2_sum_exp2(terms))
}

fn check_bound_p0(p0: f64) -> Result<()> {
    if p0 == 0.0 {
        return Err(Error::DegenerateP0);
    }
    if !(p0 > 0.0 && p0 < 0.5) {
        return Err(out_of_range(format!("p0 = {p0} outside (0, 1/2)")));
    }
    Ok(())
}

/// Bounds on `α_n` valid for `p0 <= (γ_t + 1)/n < 1`:
/// upper `(Δ/N) 2^{-n D(s||p0)}`, lower `(Δ′/N) [8(γ_t+1)(1-s)]^{-1/2} 2^{-n D(s||p0)}`
/// with `s = (γ_t + 1)/n`.
pub fn alpha_bounds(
    spectrum: &CosetLeaderSpectrum,
    p0: f64,
    gamma_t: usize,
) -> Result<AlphaBounds> {
    check_bound_p0(p0)?;
    let n = spectrum.n();
    if spectrum.num_cosets() <= 1 {
        return Err(out_of_range(
            "alpha bounds need more than one coset (k < n)",
        ));
    }
    if gamma_t + 2 > n {
        return Err(out_of_range(format!(
            "alpha bounds need gamma_t <= n - 2 (gamma_t = {gamma_t}, n = {n})"
        )));
    }
    let s = (gamma_t + 1) as f64 / n as f64;
    if s < p0 {
        return Err(out_of_range(format!(
            "alpha bounds need (gamma_t + 1)/n = {s} >= p0 = {p0}"
        )));
    }
    let exponent_log2 = -(n as f64) * binary_kl(s, p0)?;
    let log2_cosets = (n - spectrum.k()) as f64;
    let delta_log2 = delta_log2(spectrum, p0)?;
    let delta_prime_log2 = delta_prime_log2(spectrum, p0)?;
    let upper_log2 = delta_log2 - log2_cosets + exponent_log2;
    let lower_log2 =
        delta_prime_log2 - log2_cosets - 0.5 * (8.0 * (gamma_t + 1) as f64 * (1.0 - s)).log2()
            + exponent_log2;
    Ok(AlphaBounds {
        interval: Interval {
            lower_log2,
            upper_log2,
        },
        delta_log2,
        delta_prime_log2,
    })
}

/// Exact values and bounds at one threshold; bounds are `None` outside their windows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsRecord {
    pub gamma_t: usize,
    pub alpha: f64,
    pub alpha_bounds: Option<AlphaBounds>,
    pub beta: f64,
    pub beta_bounds: Option<Interval>,
}

impl BoundsRecord {
    pub fn alpha_sandwiched(&self) -> Option<bool> {
        self.alpha_bounds.map(|b| b.interval.contains(self.alpha))
    }

    pub fn beta_sandwiched(&self) -> Option<bool> {
        self.beta_bounds.map(|b| b.contains(self.beta))
    }
}

/// Exact `α`, `β` and their bounds for every `γ_t = 0..=n`.
pub fn bounds_sweep(spectrum: &CosetLeaderSpectrum, p0: f64) -> Result<Vec<BoundsRecord>> {
    (0..=spectrum.n())
        .map(|gamma_t| {
            Ok(BoundsRecord {
                gamma_t,
                alpha: alpha_exact(spectrum, p0, gamma_t)?,
                alpha_bounds: alpha_bounds(spectrum, p0, gamma_t).ok(),
                beta: beta_exact(spectrum, gamma_t)?,
                beta_bounds: beta_bounds(spectrum.n(), gamma_t).ok(),
            })
        })
        .collect()
}

/// CSV with columns `gamma_t,alpha,alpha_lower,alpha_upper,beta,beta_lower,beta_upper`; with
/// `log2` every probability column is written as its base-2 logarithm and suffixed `_log2`.
pub fn bounds_csv(records: &[BoundsRecord], log2: bool) -> String {
    let names = [
        "alpha",
        "alpha_lower",
        "alpha_upper",
        "beta",
        "beta_lower",
        "beta_upper",
    ];
    let suffix = if log2 { "_log2" } else { "" };
    let mut out = String::from("gamma_t");
    for name in names {
        out.push(',');
        out.push_str(name);
        out.push_str(suffix);
    }
    out.push('\n');
    let linear = |x: f64| fmt_sig(x);
    let logged = |x: f64| fmt_sig(x.log2());
    let show = |x: f64| if log2 { logged(x) } else { linear(x) };
    let show_log = |x_log2: f64| {
        if log2 {
            fmt_sig(x_log2)
        } else {
            fmt_sig(x_log2.exp2())
        }
    };
    for r in records {
        let a = r.alpha_bounds.map(|b| b.interval);
        let fields = [
            show(r.alpha),
            a.map(|b| show_log(b.lower_log2)).unwrap_or_default(),
            a.map(|b| show_log(b.upper_log2)).unwrap_or_default(),
            show(r.beta),
            r.beta_bounds
                .map(|b| show_log(b.lower_log2))
                .unwrap_or_default(),
            r.beta_bounds
                .map(|b| show_log(b.upper_log2))
                .unwrap_or_default(),
        ];
        out.push_str(&r.gamma_t.to_string());
        for f in fields {
            out.push(',');
            out.push_str(&f);
        }
        out.push('\n');
    }
    out
}

/// One row of the finite-length exponent report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub gamma_t: usize,
    /// `-(1/n) log2 α̂`, when the binomial-tail bounds apply at this `n`.
    pub alpha_exponent: Option<f64>,
    /// `-(1/n) log2 β_n` from the closed form.
    pub beta_exponent: f64,
    pub e0: f64,
    pub e1: f64,
    pub beta_gap: f64,
}

/// Empirical exponents at `γ_t = round(t n)` for each block length.
///
/// `β_n` is exact. Without a spectrum `α̂` is the log-domain midpoint of the binomial-tail
/// bounds on `P(Bin(n, p0) > γ_t)`.
pub fn exponent_convergence_report(
    t: f64,
    p0: f64,
    n_list: &[usize],
) -> Result<Vec<ConvergenceRow>> {
    let limit = exponents(t, p0)?;
    n_list
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(out_of_range("block length must be positive"));
            }
            let gamma_t = (t * n as f64).round() as usize;
            let beta_exponent = -beta_closed_form_log2(n, gamma_t)? / n as f64;
            let s = (gamma_t + 1) as f64 / n as f64;
            let alpha_exponent = (p0 > 0.0 && s >= p0 && s < 1.0).then(|| {
                let upper = -(n as f64) * binary_kl(s, p0).expect("valid KL arguments");
                let lower = upper - 0.5 * (8.0 * (gamma_t + 1) as f64 * (1.0 - s)).log2();
                -0.5 * (upper + lower) / n as f64
            });
            Ok(ConvergenceRow {
                n,
                gamma_t,
                alpha_exponent,
                beta_exponent,
                e0: limit.e0,
                e1: limit.e1,
                beta_gap: (beta_exponent - limit.e1).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binomial;

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // -0.25 log2 0.25 - 0.75 log2 0.75
        assert!((binary_entropy(0.25).unwrap() - 0.811_278_124_459_132_8).abs() < 1e-15);
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn kl_values() {
        assert_eq!(binary_kl(0.3, 0.3).unwrap(), 0.0);
        assert!((binary_kl(0.5, 0.05).unwrap() - 1.197_964_338_165_569_6).abs() < 1e-14);
        assert!((binary_kl(0.2, 0.05).unwrap() - 0.201_657_989_245_131_7).abs() < 1e-14);
        assert_eq!(binary_kl(0.0, 0.0).unwrap(), 0.0);
        assert!(binary_kl(0.1, 0.0).is_err());
        assert!(binary_kl(-0.1, 0.5).is_err());
    }

    #[test]
    fn exponent_examples() {
        let p = exponents(0.05, 0.05).unwrap();
        assert_eq!(p.e0, 0.0);
        assert!((p.e1 - 0.713_603_042_884_043_7).abs() < 1e-14);
        let p = exponents(0.5, 0.05).unwrap();
        assert!((p.e0 - 1.197_964_338_165_569_6).abs() < 1e-14);
        assert_eq!(p.e1, 0.0);
        let p = exponents(0.25, 0.05).unwrap();
        assert!((p.e0 - 0.324_704_335_345_540_3).abs() < 1e-14);
        assert!((p.e1 - 0.188_721_875_540_867_2).abs() < 1e-14);
        assert!(exponents(0.04, 0.05).is_err());
        assert!(exponents(0.51, 0.05).is_err());
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0.05:0.5:10").unwrap();
        assert_eq!(g.len(), 10);
        assert_eq!(g[0], 0.05);
        assert_eq!(g[9], 0.5);
        assert_eq!(parse_grid("0.2:0.2:1").unwrap(), vec![0.2]);
        assert!(parse_grid("0.2:0.3").is_err());
        assert!(parse_grid("a:0.3:2").is_err());
        assert!(parse_grid("0.2:0.3:0").is_err());
    }

    #[test]
    fn beta_bound_examples() {
        let b = beta_bounds(16, 4).unwrap();
        assert!((b.upper_log2 - (-16.0 * binary_kl(0.75, 0.5).unwrap())).abs() < 1e-12);
        assert!(b.contains(2517.0 / 65536.0));

        let sum: u128 = (0..=7).map(|g| binomial(31, g)).sum();
        let exact = sum as f64 / 2f64.powi(31);
        assert!(beta_bounds(31, 7).unwrap().contains(exact));

        assert_eq!(beta_bounds(16, 8).unwrap().upper(), 1.0);
        assert!(beta_bounds(16, 0).is_err());
        assert!(beta_bounds(16, 9).is_err());
    }

    #[test]
    fn alpha_bound_examples() {
        let s = CosetLeaderSpectrum::new(7, 4, vec![1, 7]).unwrap();
        let b = alpha_bounds(&s, 0.05, 2).unwrap();
        assert!(b.lower() <= 0.027_810_430_664_062_5 && 0.027_810_430_664_062_5 <= b.upper());
        // Δ = 7 (κ^{1/2} - κ^{-1/2}) with κ^{1/2} = 19
        assert!((b.delta() - 7.0 * (19.0 - 1.0 / 19.0)).abs() < 1e-10);
        let dp = 4.0 * std::f64::consts::PI.powi(2) * (-3f64).exp() * 7.0 * (1.0f64 / 19.0).powi(3);
        assert!((b.delta_prime() - dp).abs() < 1e-15);

        let trivial = CosetLeaderSpectrum::new(7, 7, vec![1]).unwrap();
        assert!(matches!(
            alpha_bounds(&trivial, 0.05, 2),
            Err(Error::OutOfRange(_))
        ));
        assert_eq!(alpha_bounds(&s, 0.0, 2).unwrap_err(), Error::DegenerateP0);
        assert!(alpha_bounds(&s, 0.05, 6).is_err());
        assert!(alpha_bounds(&s, 0.2, 0).is_err());
    }

    #[test]
    fn csv_blank_outside_windows() {
        let s = CosetLeaderSpectrum::new(7, 4, vec![1, 7]).unwrap();
        let records = bounds_sweep(&s, 0.05).unwrap();
        let csv = bounds_csv(&records, false);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "gamma_t,alpha,alpha_lower,alpha_upper,beta,beta_lower,beta_upper"
        );
        // gamma_t = 0: alpha window open, beta window closed
        assert!(lines[1].ends_with(",,"));
        // gamma_t = 7: neither window applies
        assert_eq!(lines[8], "7,0,,,1,,");
        let log_csv = bounds_csv(&records, true);
        assert!(log_csv.starts_with("gamma_t,alpha_log2,alpha_lower_log2"));
    }

    #[test]
    fn convergence_examples() {
        let rows = exponent_convergence_report(0.3, 0.05, &[20, 100, 500]).unwrap();
        assert!(rows.windows(2).all(|w| w[1].beta_gap < w[0].beta_gap));
        let rows = exponent_convergence_report(0.05, 0.05, &[20, 100]).unwrap();
        assert!(rows.iter().all(|r| r.e0 == 0.0));
        let rows = exponent_convergence_report(0.5, 0.05, &[100, 1000, 10000]).unwrap();
        assert!(rows
            .windows(2)
            .all(|w| w[1].beta_exponent < w[0].beta_exponent));
        assert!(rows.last().unwrap().beta_exponent < 1e-3);
    }
}
