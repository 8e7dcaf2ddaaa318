use num_bigint::BigInt;
use thiserror::Error;

/// Errors surfaced by the library. Domain preconditions are checked eagerly;
/// a violated internal invariant (a construction that fails its own
/// verification) is reported as `Internal` and indicates a bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("inexact polynomial division, remainder {remainder}")]
    InexactDivision { remainder: String },

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("no unit table for conductor {0}")]
    UnknownConductor(u64),

    #[error("unknown witness name `{0}`")]
    UnknownWitness(String),

    #[error("wrong residue class: {0}")]
    WrongResidue(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("search exhausted at bound {bound}: {what}")]
    SearchExhausted { what: String, bound: u64 },

    #[error("cannot factor {value}: cofactor {cofactor} exceeds the primality bound")]
    FactorBound { value: BigInt, cofactor: BigInt },

    #[error("work budget exceeded: {0}")]
    Budget(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
