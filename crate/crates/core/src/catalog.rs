//! Built-in codes: Hamming, first-order Reed–Muller, Golay and a primitive BCH code.

use crate::code::BinaryLinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Catalog names accepted by [`catalog_lookup`], with their `(n, k)`.
pub const CATALOG: &[(&str, usize, usize)] = &[
    ("hamming_7_4", 7, 4),
    ("rm_8_4", 8, 4),
    ("hamming_15_11", 15, 11),
    ("rm_16_5", 16, 5),
    ("golay_23_12", 23, 12),
    ("ext_golay_24_12", 24, 12),
    ("bch_31_11", 31, 11),
    ("hamming_31_26", 31, 26),
];

/// `x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1`
pub const GOLAY_GENERATOR_POLY: u64 = 0xC75;

/// Degree-20 generator of the 5-error-correcting primitive BCH code of length 31 (octal 5423325).
pub const BCH_31_11_GENERATOR_POLY: u64 = 0o5423325;

pub fn catalog_lookup(name: &str) -> Result<BinaryLinearCode> {
    match name {
        "hamming_7_4" => hamming(3),
        "hamming_15_11" => hamming(4),
        "hamming_31_26" => hamming(5),
        "rm_8_4" => reed_muller_first_order(3),
        "rm_16_5" => reed_muller_first_order(4),
        "golay_23_12" => cyclic(23, GOLAY_GENERATOR_POLY),
        "ext_golay_24_12" => extended_golay(),
        "bch_31_11" => cyclic(31, BCH_31_11_GENERATOR_POLY),
        other => Err(Error::UnknownCode(other.to_string())),
    }
}

/// Hamming code of length `2^m - 1`: the parity-check columns are all nonzero `m`-bit patterns.
pub fn hamming(m: usize) -> Result<BinaryLinearCode> {
    if !(2..=6).contains(&m) {
        return Err(Error::OutOfRange(format!(
            "Hamming order m = {m} outside 2..=6"
        )));
    }
    let n = (1usize << m) - 1;
    let rows = (0..m)
        .map(|r| (0..n).fold(0u64, |acc, j| acc | ((((j as u64 + 1) >> r) & 1) << j)))
        .collect();
    BinaryLinearCode::from_parity_check(BitMatrix::new(rows, n)?)
}

/// RM(1, m): evaluations of `1, x_1, …, x_m` at all points of `GF(2)^m`.
pub fn reed_muller_first_order(m: usize) -> Result<BinaryLinearCode> {
    if !(1..=6).contains(&m) {
        return Err(Error::OutOfRange(format!(
            "Reed-Muller order m = {m} outside 1..=6"
        )));
    }
    let n = 1usize << m;
    let all_ones = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rows = vec![all_ones];
    for var in 0..m {
        rows.push((0..n).fold(0u64, |acc, point| {
            acc | ((((point >> var) & 1) as u64) << point)
        }));
    }
    BinaryLinearCode::from_generator(BitMatrix::new(rows, n)?)
}

/// Cyclic code of length `n` generated by `poly` (bit `i` = coefficient of `x^i`).
pub fn cyclic(n: usize, poly: u64) -> Result<BinaryLinearCode> {
    if poly == 0 || n > 64 {
        return Err(Error::OutOfRange("invalid cyclic code parameters".into()));
    }
    let degree = 63 - poly.leading_zeros() as usize;
    if degree >= n {
        return Err(Error::OutOfRange(format!(
            "generator degree {degree} >= length {n}"
        )));
    }
    let k = n - degree;
    let rows = (0..k).map(|i| poly << i).collect();
    BinaryLinearCode::from_generator(BitMatrix::new(rows, n)?)
}

/// The `[24, 12]` extended Golay code: the `[23, 12]` code plus an overall parity bit.
pub fn extended_golay() -> Result<BinaryLinearCode> {
    let golay = cyclic(23, GOLAY_GENERATOR_POLY)?;
    let rows = golay
        .generator()
        .rows()
        .iter()
        .map(|&row| row | (u64::from(row.count_ones() & 1) << 23))
        .collect();
    BinaryLinearCode::from_generator(BitMatrix::new(rows, 24)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_mod(mut a: u128, b: u128) -> u128 {
        let db = 127 - b.leading_zeros();
        while a != 0 && 127 - a.leading_zeros() >= db {
            a ^= b << (127 - a.leading_zeros() - db);
        }
        a
    }

    #[test]
    fn catalog_dimensions_and_duality() {
        for &(name, n, k) in CATALOG {
            let code = catalog_lookup(name).unwrap();
            assert_eq!((code.n(), code.k()), (n, k), "{name}");
            assert_eq!(code.generator().rank(), k, "{name}");
            assert!(
                code.generator()
                    .mul_transpose(code.parity_check())
                    .unwrap()
                    .is_zero(),
                "{name}"
            );
        }
    }

    #[test]
    fn unknown_code() {
        assert_eq!(
            catalog_lookup("lcd_16_5").unwrap_err(),
            Error::UnknownCode("lcd_16_5".into())
        );
    }

    #[test]
    fn cyclic_generators_divide_x_n_minus_1() {
        assert_eq!(poly_mod((1 << 23) | 1, GOLAY_GENERATOR_POLY as u128), 0);
        assert_eq!(poly_mod((1 << 31) | 1, BCH_31_11_GENERATOR_POLY as u128), 0);
        assert_eq!(63 - BCH_31_11_GENERATOR_POLY.leading_zeros(), 20);
    }

    #[test]
    fn minimum_distances() {
        let min_weight = |name: &str| {
            let code = catalog_lookup(name).unwrap();
            code.codewords()
                .filter(|&c| c != 0)
                .map(u64::count_ones)
                .min()
                .unwrap()
        };
        assert_eq!(min_weight("hamming_7_4"), 3);
        assert_eq!(min_weight("rm_8_4"), 4);
        assert_eq!(min_weight("rm_16_5"), 8);
        assert_eq!(min_weight("golay_23_12"), 7);
        assert_eq!(min_weight("ext_golay_24_12"), 8);
        assert_eq!(min_weight("bch_31_11"), 11);
    }
}
