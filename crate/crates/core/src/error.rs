use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator matrix is rank deficient: rank {rank} < k = {k}")]
    RankDeficient { rank: usize, k: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid code dimensions n = {n}, k = {k} (need 1 <= k < n <= 64)")]
    InvalidDimensions { n: usize, k: usize },

    #[error("matrix is not in systematic form [I_k | P]")]
    NotSystematic,

    #[error("unknown catalog code `{0}`")]
    UnknownCode(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("syndrome space too large: n - k = {redundancy} exceeds 24")]
    SyndromeSpaceTooLarge { redundancy: usize },

    #[error("invalid coset leader spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("crossover probability p0 = 0 makes the alpha bound constants undefined")]
    DegenerateP0,

    #[error("infeasible ILP: capacities sum to {capacity} < required total {total}")]
    Infeasible { capacity: u128, total: u64 },

    #[error("ILP instance too large for exhaustive search ({points} grid points)")]
    TooLarge { points: u128 },

    #[error("invalid coset leader table: {0}")]
    InvalidTable(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub(crate) fn out_of_range(msg: impl Into<String>) -> Error {
    Error::OutOfRange(msg.into())
}
