use thiserror::Error;

/// Error taxonomy shared by all modules. Each variant carries a stable
/// machine-readable code (see [`Error::code`]) surfaced by the CLI.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("input polynomial is not symmetric under variable permutations")]
    NotSymmetric,
    #[error("the empty partition has no kappa coefficient")]
    EmptyPartition,
    #[error("multinomial parts sum to {sum}, exceeding top {top}")]
    PartsExceedTop { top: u64, sum: u64 },
    #[error("index k={k} outside valid range [1, {max}]")]
    IndexOutOfRange { k: u64, max: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("ground sizes differ")]
    GroundMismatch,
    #[error("minimal generators must be non-empty subsets")]
    EmptySubsetGiven,
    #[error("(d - r) = {diff} is divisible by (p - 1) = {pm1}; no Adams collection exists")]
    PreconditionViolated { diff: u64, pm1: u64 },
    #[error("(r-1)! is not invertible modulo p^m for r = {r} > p = {p}")]
    NotInvertible { r: u64, p: u64 },
    #[error("degree {d} has the form l*p^t (l={l}, t={t}); not Steenrod-decomposable")]
    NotDecomposable { d: u64, l: u64, t: u32 },
    #[error("schedule range exceeded: {0}")]
    RangeExceeded(String),
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("operation requires mod-p coefficients")]
    WrongCoefficients,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code for CLI payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSymmetric => "NotSymmetric",
            Error::EmptyPartition => "EmptyPartition",
            Error::PartsExceedTop { .. } => "PartsExceedTop",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotPrime(_) => "NotPrime",
            Error::RingMismatch => "RingMismatch",
            Error::GroundMismatch => "GroundMismatch",
            Error::EmptySubsetGiven => "EmptySubsetGiven",
            Error::PreconditionViolated { .. } => "PreconditionViolated",
            Error::NotInvertible { .. } => "NotInvertible",
            Error::NotDecomposable { .. } => "NotDecomposable",
            Error::RangeExceeded(_) => "RangeExceeded",
            Error::CertificateFailure(_) => "CertificateFailure",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::WrongCoefficients => "WrongCoefficients",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
