use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("p^{exponent} does not fit in 63 bits for p = {p}")]
    PrecisionOverflow { p: u64, exponent: u32 },

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("not a distinguished polynomial: {0}")]
    NotDistinguished(String),

    #[error("series vanishes within its precision")]
    ZeroWithinPrecision,

    #[error("no unit coefficient below X^{0}")]
    InsufficientXPrecision(usize),

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("module is not torsion (free rank {0})")]
    NotTorsion(u32),

    #[error("modules live over different bases: {0}")]
    ModuleMismatch(String),

    #[error("corank increments did not stabilize by e = {e_max}: {increments:?}")]
    NotStabilized { e_max: u32, increments: Vec<i64> },

    #[error("window too small: n_max = {0}, need at least 2")]
    WindowTooSmall(u32),

    #[error("inconsistent ledger: stored |K1+|/|K1| exponent {stored}, identity gives {computed}")]
    InconsistentLedger { stored: i64, computed: i64 },

    #[error("rank jump {jump} at n = {n} is not divisible by {divisor}")]
    NonIntegralExponent { n: usize, jump: u64, divisor: u64 },

    #[error("rank decreases at n = {0}")]
    DecreasingRank(usize),

    #[error("{ell} is not coprime to {p}")]
    NotCoprime { ell: u64, p: u64 },

    #[error("level {0} is not square-free")]
    NotSquareFree(u64),

    #[error("inadmissible query: {0}")]
    InadmissibleQuery(String),

    #[error("invalid record: {0}")]
    InvalidRecord(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
