//! Combinatorial and numerical helpers shared by the analytic modules.

/// Exact binomial coefficient `C(n, k)`; zero when `k > n`.
///
/// Exact for every `n <= 128`, which covers all block lengths used here.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Table of natural-log factorials, `ln(m!)` for `m = 0..=max`.
#[derive(Debug, Clone)]
pub struct LnFactorials {
    table: Vec<f64>,
}

impl LnFactorials {
    pub fn new(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        let mut sum = KahanSum::default();
        table.push(0.0);
        for m in 1..=max {
            sum.add((m as f64).ln());
            table.push(sum.value());
        }
        LnFactorials { table }
    }

    pub fn ln_factorial(&self, m: usize) -> f64 {
        self.table[m]
    }

    /// `ln C(n, k)`, or `-inf` when `k > n`.
    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        if k > n {
            return f64::NEG_INFINITY;
        }
        self.table[n] - self.table[k] - self.table[n - k]
    }
}

/// Compensated (Kahan–Babuška) summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl std::iter::Sum<f64> for KahanSum {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub(crate) fn kahan_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().sum::<KahanSum>().value()
}

/// `log2(Σ 2^x)` over the given base-2 logarithms. Empty or all `-inf` input gives `-inf`.
pub fn log2_sum_exp2<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let rest = kahan_sum(terms.iter().map(|&x| (x - max).exp2()));
    max + rest.log2()
}

/// Iterates all `n`-bit masks of Hamming weight `weight` in increasing numeric order
/// (Gosper's hack, widened to 128 bits so `n = 64` does not overflow).
#[derive(Debug, Clone)]
pub struct FixedWeight {
    next: Option<u128>,
    limit: u128,
}

impl FixedWeight {
    pub fn new(n: usize, weight: usize) -> Self {
        assert!(n <= 64, "fixed-weight enumeration supports n <= 64");
        let next = if weight > n {
            None
        } else {
            Some((1u128 << weight) - 1)
        };
        FixedWeight {
            next,
            limit: 1u128 << n,
        }
    }
}

impl Iterator for FixedWeight {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next?;
        self.next = if current == 0 {
            None
        } else {
            let lowest = current & current.wrapping_neg();
            let ripple = current + lowest;
            let candidate = (((ripple ^ current) >> 2) / lowest) | ripple;
            (candidate < self.limit).then_some(candidate)
        };
        Some(current as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(7, 2), 21);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(31, 7), 2_629_575);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn binomial_matches_pascal() {
        let mut row = vec![1u128];
        for n in 1..=100u64 {
            let mut next = vec![1u128; n as usize + 1];
            for k in 1..n as usize {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(binomial(n, k as u64), c, "C({n},{k})");
            }
        }
    }

    #[test]
    fn ln_binomial_close_to_exact() {
        let lf = LnFactorials::new(64);
        for n in 0..=64usize {
            for k in 0..=n {
                let exact = (binomial(n as u64, k as u64) as f64).ln();
                assert!((lf.ln_binomial(n, k) - exact).abs() < 1e-12 * exact.max(1.0));
            }
        }
    }

    #[test]
    fn fixed_weight_counts_and_order() {
        for n in 0..=12usize {
            for w in 0..=n + 1 {
                let masks: Vec<u64> = FixedWeight::new(n, w).collect();
                assert_eq!(masks.len() as u128, binomial(n as u64, w as u64));
                assert!(masks.windows(2).all(|p| p[0] < p[1]));
                assert!(masks
                    .iter()
                    .all(|m| m.count_ones() as usize == w && *m >> n == 0));
            }
        }
    }

    #[test]
    fn fixed_weight_full_width() {
        let top: Vec<u64> = FixedWeight::new(64, 63).collect();
        assert_eq!(top.len(), 64);
        assert_eq!(*top.last().unwrap(), u64::MAX - 1);
        assert_eq!(FixedWeight::new(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
    }

    #[test]
    fn log2_sum_exp2_basic() {
        assert!((log2_sum_exp2([3.0, 3.0]) - 4.0).abs() < 1e-15);
        assert_eq!(log2_sum_exp2([f64::NEG_INFINITY]), f64::NEG_INFINITY);
        assert!((log2_sum_exp2([-2000.0, -2000.0]) + 1999.0).abs() < 1e-12);
    }

    #[test]
    fn kahan_recovers_small_terms() {
        let mut s = KahanSum::default();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-17);
        }
        assert!((s.value() - (1.0 + 1e-14)).abs() < 1e-17);
    }
}
