//! Coset leader spectra and syndrome-indexed coset leader tables.
//!
//! Leaders are found by visiting vectors in increasing Hamming weight; the first vector to
//! reach an unseen syndrome is stored as that coset's leader. Within a weight class vectors
//! are visited in increasing numeric order, which fixes the tie-break.

use serde::{Deserialize, Serialize};

use crate::code::{syndrome_from_columns, BinaryLinearCode};
use crate::combin::{binomial, FixedWeight};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Largest `n - k` for which the 2^(n-k)-entry syndrome space is enumerated.
pub const MAX_REDUNDANCY: usize = 24;

/// The vector `(N_0, …, N_ρ)` of coset leader counts by weight.
///
/// May describe a hypothetical code: only the counting invariants are enforced, not
/// realizability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetLeaderSpectrum {
    n: usize,
    k: usize,
    rho: usize,
    counts: Vec<u64>,
}

#[derive(Deserialize)]
struct SpectrumJson {
    n: usize,
    k: usize,
    rho: Option<usize>,
    counts: Vec<u64>,
}

impl CosetLeaderSpectrum {
    /// Validates and builds a spectrum. Trailing zero counts are rejected; see
    /// [`from_padded_counts`](Self::from_padded_counts) to trim them.
    pub fn new(n: usize, k: usize, counts: Vec<u64>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidSpectrum(msg));
        if n == 0 || n > 64 || k > n || n - k > 63 {
            return invalid(format!("unsupported parameters n = {n}, k = {k}"));
        }
        if counts.first() != Some(&1) {
            return invalid("N_0 must equal 1".into());
        }
        if counts.last() == Some(&0) {
            return invalid("last count N_rho must be nonzero".into());
        }
        let rho = counts.len() - 1;
        if rho > n - k {
            return invalid(format!(
                "covering radius {rho} exceeds n - k = {} (Singleton)",
                n - k
            ));
        }
        for (i, &c) in counts.iter().enumerate() {
            let cap = binomial(n as u64, i as u64);
            if u128::from(c) > cap {
                return invalid(format!("N_{i} = {c} exceeds C({n},{i}) = {cap}"));
            }
        }
        let total: u128 = counts.iter().map(|&c| u128::from(c)).sum();
        if total != 1u128 << (n - k) {
            return invalid(format!(
                "counts sum to {total}, expected 2^(n-k) = {}",
                1u128 << (n - k)
            ));
        }
        let covered: u128 = (0..=rho).map(|i| binomial(n as u64, i as u64)).sum();
        if covered < total {
            return invalid("sphere-covering bound violated".into());
        }
        Ok(CosetLeaderSpectrum { n, k, rho, counts })
    }

    pub fn from_padded_counts(n: usize, k: usize, mut counts: Vec<u64>) -> Result<Self> {
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        Self::new(n, k, counts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of cosets, `2^(n-k)`.
    pub fn num_cosets(&self) -> u64 {
        1u64 << (self.n - self.k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SpectrumJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let spectrum = Self::new(raw.n, raw.k, raw.counts)?;
        if let Some(rho) = raw.rho {
            if rho != spectrum.rho {
                return Err(Error::InvalidSpectrum(format!(
                    "rho = {rho} disagrees with counts (last nonzero index {})",
                    spectrum.rho
                )));
            }
        }
        Ok(spectrum)
    }

    /// `n,k,rho,N0,N1,...`
    pub fn to_csv_line(&self) -> String {
        let mut fields = vec![self.n.to_string(), self.k.to_string(), self.rho.to_string()];
        fields.extend(self.counts.iter().map(u64::to_string));
        fields.join(",")
    }
}

/// Index of the last nonzero count.
pub fn covering_radius(spectrum: &CosetLeaderSpectrum) -> usize {
    spectrum.counts().iter().rposition(|&c| c != 0).unwrap_or(0)
}

/// Smallest `r` with `Σ_{i<=r} C(n, i) >= 2^(n-k)`.
pub fn sphere_covering_radius(n: usize, k: usize) -> usize {
    let target = 1u128 << (n - k);
    let mut covered = 0u128;
    for r in 0..=n {
        covered += binomial(n as u64, r as u64);
        if covered >= target {
            return r;
        }
    }
    n
}

/// Syndrome-indexed minimum-weight coset representatives for one code.
#[derive(Clone, PartialEq, Eq)]
pub struct CosetLeaderTable {
    n: usize,
    k: usize,
    parity_rows: Vec<u64>,
    column_syndromes: Vec<u64>,
    leaders: Vec<u64>,
}

impl std::fmt::Debug for CosetLeaderTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CosetLeaderTable[{}, {}; {} cosets]",
            self.n,
            self.k,
            self.leaders.len()
        )
    }
}

const TABLE_MAGIC: &[u8; 4] = b"CLTB";
const TABLE_VERSION: u8 = 1;

impl CosetLeaderTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    pub fn leader(&self, syndrome: u64) -> u64 {
        self.leaders[syndrome as usize]
    }

    pub fn leaders(&self) -> &[u64] {
        &self.leaders
    }

    pub fn parity_rows(&self) -> &[u64] {
        &self.parity_rows
    }

    #[inline]
    pub fn syndrome_word(&self, v: u64) -> u64 {
        syndrome_from_columns(&self.column_syndromes, v)
    }

    pub fn leader_of(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        BitVector::new(self.n, self.leader(self.syndrome_word(v.bits())))
    }

    pub fn matches_code(&self, code: &BinaryLinearCode) -> bool {
        self.n == code.n() && self.k == code.k() && self.parity_rows == code.parity_check().rows()
    }

    /// Binary dump: magic `CLTB`, version, `n`, `k`, a zero byte, then `n - k` parity-check
    /// rows and `2^(n-k)` leaders, each as little-endian `u64`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 8 * (self.parity_rows.len() + self.leaders.len()));
        out.extend_from_slice(TABLE_MAGIC);
        out.extend_from_slice(&[TABLE_VERSION, self.n as u8, self.k as u8, 0]);
        for word in self.parity_rows.iter().chain(&self.leaders) {
            out.extend_from_slice(&word.to_le_bytes());
        }
        out
    }

    /// Reads a dump written by [`to_bytes`](Self::to_bytes), re-checking every entry.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidTable(msg.to_string());
        if bytes.len() < 8 || &bytes[..4] != TABLE_MAGIC {
            return Err(bad("missing CLTB header"));
        }
        if bytes[4] != TABLE_VERSION {
            return Err(bad("unsupported table version"));
        }
        let (n, k) = (bytes[5] as usize, bytes[6] as usize);
        if !(1 <= k && k < n && n <= 64) || n - k > MAX_REDUNDANCY {
            return Err(bad("invalid code dimensions"));
        }
        let r = n - k;
        let expected = 8 + 8 * (r + (1usize << r));
        if bytes.len() != expected {
            return Err(bad("truncated or oversized table"));
        }
        let mut words = bytes[8..]
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("8-byte chunk")));
        let parity_rows: Vec<u64> = words.by_ref().take(r).collect();
        let leaders: Vec<u64> = words.collect();
        let h = crate::gf2::BitMatrix::new(parity_rows.clone(), n)
            .map_err(|_| bad("parity rows exceed n"))?;
        if h.rank() != r {
            return Err(bad("parity-check rows are not independent"));
        }
        let column_syndromes: Vec<u64> = (0..n).map(|j| h.column(j)).collect();
        let table = CosetLeaderTable {
            n,
            k,
            parity_rows,
            column_syndromes,
            leaders,
        };
        table.validate()?;
        Ok(table)
    }

    /// Checks that every leader sits in its own coset and that weights are consistent with
    /// a valid spectrum.
    pub fn validate(&self) -> Result<CosetLeaderSpectrum> {
        if self.leaders.first() != Some(&0) {
            return Err(Error::InvalidTable(
                "syndrome 0 must map to the zero vector".into(),
            ));
        }
        let mut counts = vec![0u64; self.n + 1];
        for (s, &leader) in self.leaders.iter().enumerate() {
            if self.n < 64 && leader >> self.n != 0 {
                return Err(Error::InvalidTable(format!(
                    "leader for syndrome {s} exceeds n bits"
                )));
            }
            if self.syndrome_word(leader) != s as u64 {
                return Err(Error::InvalidTable(format!(
                    "leader for syndrome {s} lies in a different coset"
                )));
            }
            counts[leader.count_ones() as usize] += 1;
        }
        CosetLeaderSpectrum::from_padded_counts(self.n, self.k, counts)
    }
}

/// Enumerates coset leaders in increasing weight order until every syndrome is seen.
pub fn enumerate_spectrum(
    code: &BinaryLinearCode,
    build_table: bool,
) -> Result<(CosetLeaderSpectrum, Option<CosetLeaderTable>)> {
    let n = code.n();
    let r = code.redundancy();
    if r > MAX_REDUNDANCY {
        return Err(Error::SyndromeSpaceTooLarge { redundancy: r });
    }
    let num_cosets = 1usize << r;
    let columns = code.column_syndromes();
    let mut seen = vec![0u64; num_cosets.div_ceil(64)];
    let mut leaders = if build_table {
        vec![0u64; num_cosets]
    } else {
        Vec::new()
    };
    let mut counts = Vec::new();
    let mut found = 0usize;

    for weight in 0..=n {
        let mut in_class = 0u64;
        for v in FixedWeight::new(n, weight) {
            let s = syndrome_from_columns(columns, v) as usize;
            let (word, bit) = (s / 64, 1u64 << (s % 64));
            if seen[word] & bit == 0 {
                seen[word] |= bit;
                if build_table {
                    leaders[s] = v;
                }
                in_class += 1;
                found += 1;
                if found == num_cosets {
                    break;
                }
            }
        }
        counts.push(in_class);
        if found == num_cosets {
            break;
        }
    }

    let spectrum = CosetLeaderSpectrum::from_padded_counts(n, code.k(), counts)
        .map_err(|e| Error::Invariant(format!("enumerated spectrum is inconsistent: {e}")))?;
    let table = build_table.then(|| CosetLeaderTable {
        n,
        k: code.k(),
        parity_rows: code.parity_check().rows().to_vec(),
        column_syndromes: columns.to_vec(),
        leaders,
    });
    Ok((spectrum, table))
}
