//! Bit-packed GF(2) vectors and matrices (one `u64` word per vector / matrix row).
//!
//! Bit `j` of a word is coordinate `j` of the vector (least significant bit first).

use std::fmt;
use std::ops::BitXor;

use crate::error::{Error, Result};

pub const MAX_LEN: usize = 64;

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[inline]
pub(crate) fn parity(word: u64) -> u64 {
    u64::from(word.count_ones() & 1)
}

/// A binary vector of length at most 64.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    bits: u64,
}

impl BitVector {
    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::OutOfRange(format!(
                "vector length {len} outside 1..=64"
            )));
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::OutOfRange(format!(
                "bits {bits:#x} set beyond length {len}"
            )));
        }
        Ok(BitVector { len, bits })
    }

    pub fn zero(len: usize) -> Result<Self> {
        Self::new(len, 0)
    }

    /// The unit vector `e_j`.
    pub fn unit(len: usize, j: usize) -> Result<Self> {
        if j >= len {
            return Err(Error::OutOfRange(format!("position {j} >= length {len}")));
        }
        Self::new(len, 1u64 << j)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, j: usize) -> bool {
        j < self.len && (self.bits >> j) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn distance(&self, other: &BitVector) -> Result<u32> {
        Ok((*self ^ *other)?.weight())
    }
}

impl BitXor for BitVector {
    type Output = Result<BitVector>;

    fn bitxor(self, rhs: BitVector) -> Result<BitVector> {
        if self.len != rhs.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                got: rhs.len,
            });
        }
        Ok(BitVector {
            len: self.len,
            bits: self.bits ^ rhs.bits,
        })
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len {
            f.write_str(if self.get(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense binary matrix with at most 64 columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<u64>,
    cols: usize,
}

impl BitMatrix {
    pub fn new(rows: Vec<u64>, cols: usize) -> Result<Self> {
        if cols > MAX_LEN {
            return Err(Error::OutOfRange(format!("{cols} columns exceeds 64")));
        }
        let mask = low_mask(cols);
        if let Some(r) = rows.iter().position(|row| row & !mask != 0) {
            return Err(Error::OutOfRange(format!(
                "row {r} has bits beyond column {cols}"
            )));
        }
        Ok(BitMatrix { rows, cols })
    }

    pub fn identity(size: usize) -> Result<Self> {
        Self::new((0..size).map(|i| 1u64 << i).collect(), size)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        (self.rows[row] >> col) & 1 == 1
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            bits: self.rows[r],
        }
    }

    /// Column `j` packed as a word whose bit `r` is entry `(r, j)`.
    pub fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, row)| acc | (((row >> j) & 1) << r))
    }

    pub fn transpose(&self) -> Result<BitMatrix> {
        BitMatrix::new(
            (0..self.cols).map(|j| self.column(j)).collect(),
            self.rows.len(),
        )
    }

    /// `self · otherᵀ`; entry `(i, j)` is the inner product of row `i` of `self` with row `j` of `other`.
    pub fn mul_transpose(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|a| {
                other
                    .rows
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, b)| acc | (parity(a & b) << j))
            })
            .collect();
        BitMatrix::new(rows, other.rows.len())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Reduced row echelon form; returns the nonzero reduced rows and their pivot columns.
    pub fn row_reduce(&self) -> (Vec<u64>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let bit = 1u64 << col;
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// True when both matrices have the same row space.
    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let r = self.rank();
        if r != other.rank() {
            return false;
        }
        let mut stacked = self.rows.clone();
        stacked.extend_from_slice(&other.rows);
        BitMatrix {
            rows: stacked,
            cols: self.cols,
        }
        .rank()
            == r
    }

    /// Returns the matrix whose column `j` is column `perm[j]` of `self`.
    pub fn select_columns(&self, perm: &[usize]) -> Result<BitMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                perm.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &src)| acc | (((row >> src) & 1) << j))
            })
            .collect();
        BitMatrix::new(rows, perm.len())
    }

    /// Inverse of [`select_columns`](Self::select_columns): column `perm[j]` of the result is column `j` of `self`.
    pub fn scatter_columns(&self, perm: &[usize]) -> Result<BitMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                perm.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &dst)| acc | (((row >> j) & 1) << dst))
            })
            .collect();
        BitMatrix::new(rows, perm.len())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in 0..self.rows.len() {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Brings a full-rank `k x n` generator matrix to `[I_k | P]`.
///
/// Returns the systematic matrix together with `column_permutation`, where column `j` of the
/// systematic matrix corresponds to column `column_permutation[j]` of `generator`.
pub fn systematic_form(generator: &BitMatrix) -> Result<(BitMatrix, Vec<usize>)> {
    let k = generator.num_rows();
    let n = generator.num_cols();
    let (reduced, pivots) = generator.row_reduce();
    if pivots.len() < k {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            k,
        });
    }
    let mut perm = pivots.clone();
    perm.extend((0..n).filter(|c| !pivots.contains(c)));
    let reduced = BitMatrix::new(reduced, n)?;
    let systematic = reduced.select_columns(&perm)?;
    Ok((systematic, perm))
}

/// For `[I_k | P]` returns `H = [Pᵀ | I_{n-k}]`.
pub fn parity_check(systematic: &BitMatrix) -> Result<BitMatrix> {
    let k = systematic.num_rows();
    let n = systematic.num_cols();
    if k > n {
        return Err(Error::NotSystematic);
    }
    let identity_mask = low_mask(k);
    let is_systematic = systematic
        .rows()
        .iter()
        .enumerate()
        .all(|(i, row)| row & identity_mask == 1u64 << i);
    if !is_systematic {
        return Err(Error::NotSystematic);
    }
    let rows = (0..n - k)
        .map(|r| {
            // column k + r of G_sys gives row r of Pᵀ
            let p_t = systematic.column(k + r);
            p_t | (1u64 << (k + r))
        })
        .collect();
    BitMatrix::new(rows, n)
}

/// Basis of the dual (null space) of a matrix, expressed in the matrix's own column order.
pub fn dual_basis(matrix: &BitMatrix) -> Result<BitMatrix> {
    let (systematic, perm) = systematic_form(matrix)?;
    parity_check(&systematic)?.scatter_columns(&perm)
}
