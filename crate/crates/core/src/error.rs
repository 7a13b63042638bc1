use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u64),

    #[error("modulus p = {p} outside supported range {min}..={max}")]
    ModulusOutOfRange { p: u64, min: u32, max: u32 },

    #[error("weight index {index} out of range for p = {p} (must be < 2^{p})")]
    IndexOutOfRange { index: u64, p: u32 },

    #[error("shift {r} out of range for p = {p} (must be < p)")]
    ShiftOutOfRange { r: u32, p: u32 },

    #[error("residue {n} out of range for p = {p} (must be < p)")]
    ResidueOutOfRange { n: u64, p: u32 },

    #[error("prefix length must be at least 1")]
    EmptyPrefix,

    #[error("expected {expected} generators for p = {expected}, got {got}")]
    GeneratorCount { expected: usize, got: usize },

    #[error("size {size} exceeds cap {cap}")]
    SizeCapExceeded { size: u128, cap: u64 },

    #[error("exponent m = {m} exceeds depth M = {depth}")]
    ExponentAboveDepth { m: u32, depth: u32 },

    #[error("{0} is not a dyadic rational")]
    NotDyadic(String),

    #[error("inexact division of {numerator} by {denominator}: coefficient vector is corrupted")]
    InexactDivision {
        numerator: BigInt,
        denominator: BigInt,
    },

    #[error("argument {0} overflows 64-bit index arithmetic")]
    Overflow(u64),

    #[error("internal identity violated: {0}")]
    IdentityViolation(String),
}
