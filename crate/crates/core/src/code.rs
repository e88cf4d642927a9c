//! Binary linear `[n, k]` block codes.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVector};

/// An `[n, k]` binary linear code held through both its generator and parity-check matrices.
///
/// `parity_check` is expressed in the generator's original column order, so syndromes and
/// quantization act on the code exactly as given.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryLinearCode {
    n: usize,
    k: usize,
    generator: BitMatrix,
    parity_check: BitMatrix,
    column_syndromes: Vec<u64>,
}

impl BinaryLinearCode {
    pub fn from_generator(generator: BitMatrix) -> Result<Self> {
        let n = generator.num_cols();
        let k = generator.num_rows();
        if !(1 <= k && k < n && n <= gf2::MAX_LEN) {
            return Err(Error::InvalidDimensions { n, k });
        }
        let (systematic, perm) = gf2::systematic_form(&generator)?;
        let parity_check = gf2::parity_check(&systematic)?.scatter_columns(&perm)?;
        Self::assemble(generator, parity_check)
    }

    /// Builds the code as the null space of a full-rank parity-check matrix.
    pub fn from_parity_check(parity_check: BitMatrix) -> Result<Self> {
        let n = parity_check.num_cols();
        let r = parity_check.num_rows();
        if r == 0 || r >= n || n > gf2::MAX_LEN {
            return Err(Error::InvalidDimensions {
                n,
                k: n.saturating_sub(r),
            });
        }
        if parity_check.rank() < r {
            return Err(Error::RankDeficient {
                rank: parity_check.rank(),
                k: r,
            });
        }
        let generator = gf2::dual_basis(&parity_check)?;
        Self::assemble(generator, parity_check)
    }

    fn assemble(generator: BitMatrix, parity_check: BitMatrix) -> Result<Self> {
        let n = generator.num_cols();
        let k = generator.num_rows();
        if generator.rank() != k {
            return Err(Error::RankDeficient {
                rank: generator.rank(),
                k,
            });
        }
        if !generator.mul_transpose(&parity_check)?.is_zero() || parity_check.rank() != n - k {
            return Err(Error::Invariant(
                "parity-check matrix is not the dual of the generator".into(),
            ));
        }
        let column_syndromes = (0..n).map(|j| parity_check.column(j)).collect();
        Ok(BinaryLinearCode {
            n,
            k,
            generator,
            parity_check,
            column_syndromes,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `n - k`, the syndrome length.
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    /// Syndromes of the unit vectors `e_0 .. e_{n-1}`.
    pub fn column_syndromes(&self) -> &[u64] {
        &self.column_syndromes
    }

    pub fn syndrome(&self, v: &BitVector) -> Result<BitVector> {
        syndrome(&self.parity_check, v)
    }

    /// Syndrome of a raw `n`-bit word (no length checks).
    #[inline]
    pub fn syndrome_word(&self, v: u64) -> u64 {
        syndrome_from_columns(&self.column_syndromes, v)
    }

    /// Codeword for the message whose bit `i` selects generator row `i`.
    pub fn encode(&self, message: u64) -> u64 {
        self.generator
            .rows()
            .iter()
            .enumerate()
            .filter(|(i, _)| (message >> i) & 1 == 1)
            .fold(0, |acc, (_, row)| acc ^ row)
    }

    pub fn codewords(&self) -> impl Iterator<Item = u64> + '_ {
        assert!(self.k < 64);
        (0..1u64 << self.k).map(move |m| self.encode(m))
    }

    pub fn is_codeword(&self, v: u64) -> bool {
        self.syndrome_word(v) == 0
    }
}

impl fmt::Debug for BinaryLinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryLinearCode[{}, {}]", self.n, self.k)
    }
}

#[inline]
pub(crate) fn syndrome_from_columns(columns: &[u64], v: u64) -> u64 {
    let mut bits = v;
    let mut s = 0;
    while bits != 0 {
        s ^= columns[bits.trailing_zeros() as usize];
        bits &= bits - 1;
    }
    s
}

/// `H · vᵀ` as a vector of length `n - k` (bit `r` is the parity of row `r` against `v`).
pub fn syndrome(parity_check: &BitMatrix, v: &BitVector) -> Result<BitVector> {
    if v.len() != parity_check.num_cols() {
        return Err(Error::LengthMismatch {
            expected: parity_check.num_cols(),
            got: v.len(),
        });
    }
    let s = parity_check
        .rows()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (r, row)| {
            acc | (gf2::parity(row & v.bits()) << r)
        });
    BitVector::new(parity_check.num_rows(), s)
}

/// Parses the generator-matrix text format: a header line `n k`, then `k` rows of `n`
/// characters from `{0, 1}`. Blank trailing lines are ignored.
pub fn parse_generator(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().enumerate();
    let (header_idx, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_error(1, 1, "missing header line `n k`"))?;
    let header_line = header_idx + 1;
    let mut fields = header.split_whitespace();
    let mut field = |name: &str| -> Result<usize> {
        let tok = fields
            .next()
            .ok_or_else(|| parse_error(header_line, header.len() + 1, format!("missing {name}")))?;
        let column = header.find(tok).unwrap_or(0) + 1;
        tok.parse::<usize>()
            .map_err(|_| parse_error(header_line, column, format!("invalid {name} `{tok}`")))
    };
    let n = field("n")?;
    let k = field("k")?;
    if let Some(extra) = fields.next() {
        let column = header.rfind(extra).unwrap_or(0) + 1;
        return Err(parse_error(
            header_line,
            column,
            "unexpected token after `n k`",
        ));
    }
    if !(1 <= k && k < n && n <= gf2::MAX_LEN) {
        return Err(parse_error(
            header_line,
            1,
            format!("invalid dimensions n = {n}, k = {k} (need 1 <= k < n <= 64)"),
        ));
    }

    let mut rows = Vec::with_capacity(k);
    let mut last_line = header_line;
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.trim_end_matches('\r');
        if rows.len() == k {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_error(line_no, 1, format!("more than k = {k} rows")));
        }
        let mut row = 0u64;
        let mut width = 0;
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' if col < 64 => row |= 1u64 << col,
                '1' => {}
                other => {
                    return Err(parse_error(
                        line_no,
                        col + 1,
                        format!("invalid character `{other}` (expected 0 or 1)"),
                    ))
                }
            }
            width = col + 1;
        }
        if width != n {
            return Err(parse_error(
                line_no,
                width.min(n) + 1,
                format!("row has {width} entries, expected n = {n}"),
            ));
        }
        rows.push(row);
        last_line = line_no;
    }
    if rows.len() < k {
        return Err(parse_error(
            last_line + 1,
            1,
            format!("expected {k} rows, found {}", rows.len()),
        ));
    }
    BitMatrix::new(rows, n)
}

/// Writes a generator matrix in the text format read by [`parse_generator`].
pub fn format_generator(generator: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", generator.num_cols(), generator.num_rows());
    for r in 0..generator.num_rows() {
        out.push_str(&generator.row(r).to_string());
        out.push('\n');
    }
    out
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}
