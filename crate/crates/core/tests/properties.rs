use coset_dht::catalog::catalog_lookup;
use coset_dht::code::BinaryLinearCode;
use coset_dht::combin::binomial;
use coset_dht::error_model::{acceptance_weights, alpha_weights, beta_closed_form, beta_exact};
use coset_dht::gf2::{systematic_form, BitMatrix, BitVector};
use coset_dht::montecarlo::{md_quantize, statistic_histogram, Hypothesis, SimulationConfig};
use coset_dht::optimize::{solve_ilp, IlpInstance};
use coset_dht::spectrum::{enumerate_spectrum, CosetLeaderSpectrum};
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Full-rank generator `[I_k | P]` with its columns shuffled.
fn generator(max_n: usize) -> impl Strategy<Value = BitMatrix> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, k)| {
            let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (
                Just(n),
                Just(k),
                prop::collection::vec(any::<u64>(), k),
                perm,
            )
        })
        .prop_map(|(n, k, parity, perm)| {
            let rows: Vec<u64> = parity
                .iter()
                .enumerate()
                .map(|(r, p)| (1u64 << r) | ((p << k) & ((1u64 << n) - 1)))
                .collect();
            BitMatrix::new(rows, n)
                .unwrap()
                .select_columns(&perm)
                .unwrap()
        })
}

/// Leader-weight counts by scanning every vector of length `n`.
fn brute_force_spectrum(code: &BinaryLinearCode) -> Vec<u64> {
    let mut best = vec![u32::MAX; 1 << code.redundancy()];
    for v in 0..(1u64 << code.n()) {
        let s = code.syndrome_word(v) as usize;
        best[s] = best[s].min(v.count_ones());
    }
    let mut counts = vec![0u64; *best.iter().max().unwrap() as usize + 1];
    for w in best {
        counts[w as usize] += 1;
    }
    counts
}

fn valid_spectrum() -> impl Strategy<Value = CosetLeaderSpectrum> {
    (2usize..=40)
        .prop_flat_map(|n| (Just(n), (n.saturating_sub(20)).max(1)..n))
        .prop_flat_map(|(n, k)| (Just(n), Just(k), prop::collection::vec(0.0f64..1.0, n - k)))
        .prop_map(|(n, k, weights)| {
            let rho = n - k;
            let caps = (1..=rho)
                .map(|i| binomial(n as u64, i as u64) as u64)
                .collect();
            let instance = IlpInstance::new(weights, caps, (1u64 << rho) - 1).unwrap();
            let mut counts = vec![1];
            counts.extend(solve_ilp(&instance).unwrap());
            CosetLeaderSpectrum::from_padded_counts(n, k, counts).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn syndrome_constant_on_cosets(g in generator(24), v in any::<u64>(), m in any::<u64>()) {
        let code = BinaryLinearCode::from_generator(g).unwrap();
        let n = code.n();
        let v = v & ((1u64 << n) - 1);
        let c = code.encode(m & ((1u64 << code.k()) - 1));
        prop_assert!(code.is_codeword(c));
        prop_assert_eq!(code.syndrome_word(v), code.syndrome_word(v ^ c));
        let bv = BitVector::new(n, v).unwrap();
        let bw = BitVector::new(n, v ^ c).unwrap();
        prop_assert_eq!(code.syndrome(&bv).unwrap(), code.syndrome(&bw).unwrap());
    }

    #[test]
    fn systematic_form_keeps_row_space(g in generator(40)) {
        let (sys, perm) = systematic_form(&g).unwrap();
        let restored = sys.scatter_columns(&perm).unwrap();
        prop_assert!(restored.same_row_space(&g));
        prop_assert_eq!(sys.rank(), g.num_rows());
    }

    #[test]
    fn spectrum_matches_exhaustive_scan(g in generator(14)) {
        let code = BinaryLinearCode::from_generator(g).unwrap();
        prop_assume!(code.redundancy() <= 12);
        let (spectrum, _) = enumerate_spectrum(&code, false).unwrap();
        prop_assert_eq!(spectrum.counts(), &brute_force_spectrum(&code)[..]);
    }

    #[test]
    fn spectrum_invariant_under_column_permutation(
        g in generator(20),
        seed in any::<u64>(),
    ) {
        let n = g.num_cols();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed | 1;
        for j in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            perm.swap(j, (state % (j as u64 + 1)) as usize);
        }
        let permuted = g.select_columns(&perm).unwrap();
        let a = enumerate_spectrum(&BinaryLinearCode::from_generator(g).unwrap(), false).unwrap().0;
        let b = enumerate_spectrum(&BinaryLinearCode::from_generator(permuted).unwrap(), false).unwrap().0;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn beta_closed_form_for_any_spectrum(spectrum in valid_spectrum(), frac in 0.0f64..=1.0) {
        let gamma_t = (frac * spectrum.n() as f64).round() as usize;
        let exact = beta_exact(&spectrum, gamma_t).unwrap();
        let closed = beta_closed_form(spectrum.n(), gamma_t).unwrap();
        prop_assert!(((exact - closed) / closed).abs() <= 1e-12, "{} vs {}", exact, closed);
    }

    #[test]
    fn heavier_leaders_err_more(n in 2usize..=48, p0 in 0.001f64..0.45, frac in 0.0f64..1.0) {
        let gamma_t = (frac * n as f64) as usize;
        let reject = alpha_weights(n, n, p0, gamma_t).unwrap();
        let accept = acceptance_weights(n, n, p0, gamma_t).unwrap();
        for i in 0..n {
            prop_assert!(reject[i + 1] >= reject[i] - 1e-15);
            prop_assert!(accept[i + 1] <= accept[i] + 1e-15);
            // strict in at least one of the two complementary tails
            prop_assert!(
                reject[i + 1] > reject[i] || accept[i + 1] < accept[i],
                "n={} i={} gamma_t={}", n, i, gamma_t
            );
            prop_assert!((reject[i] + accept[i] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn golay_quantizer_within_covering_radius(x in any::<u64>()) {
        let code = catalog_lookup("golay_23_12").unwrap();
        let (_, table) = enumerate_spectrum(&code, true).unwrap();
        let x = BitVector::new(23, x & ((1 << 23) - 1)).unwrap();
        let q = md_quantize(&table.unwrap(), &x).unwrap();
        prop_assert!(code.is_codeword(q.bits()));
        prop_assert!(q.distance(&x).unwrap() <= 3);
    }
}

#[test]
fn bch_covering_radius_is_seven() {
    let (spectrum, _) = enumerate_spectrum(&catalog_lookup("bch_31_11").unwrap(), false).unwrap();
    assert_eq!(spectrum.rho(), 7);
    assert_eq!(spectrum.num_cosets(), 1 << 20);
    assert_eq!(&spectrum.counts()[..4], &[1, 31, 465, 4495]);
}

#[test]
fn statistic_is_binomial_under_h1() {
    let code = catalog_lookup("golay_23_12").unwrap();
    let table = enumerate_spectrum(&code, true).unwrap().1.unwrap();
    let trials = 400_000u64;
    let config = SimulationConfig {
        p0: 0.05,
        gamma_t: 0,
        trials,
        seed: 99,
        hypothesis: Hypothesis::H1,
    };
    let histogram = statistic_histogram(&table, &config).unwrap();
    let n = 23u64;
    // bins with expected count below 5 are merged into their neighbours
    let mut observed = Vec::new();
    let mut expected = Vec::new();
    let (mut o, mut e) = (0.0, 0.0);
    for (d, &count) in histogram.iter().enumerate() {
        o += count as f64;
        e += trials as f64 * binomial(n, d as u64) as f64 / 2f64.powi(n as i32);
        if e >= 5.0 {
            observed.push(o);
            expected.push(e);
            o = 0.0;
            e = 0.0;
        }
    }
    *observed.last_mut().unwrap() += o;
    *expected.last_mut().unwrap() += e;
    let chi2: f64 = observed
        .iter()
        .zip(&expected)
        .map(|(o, e)| (o - e).powi(2) / e)
        .sum();
    let dof = (observed.len() - 1) as f64;
    let p_value = 1.0 - ChiSquared::new(dof).unwrap().cdf(chi2);
    assert!(p_value > 1e-3, "chi2 = {chi2}, dof = {dof}, p = {p_value}");
}
