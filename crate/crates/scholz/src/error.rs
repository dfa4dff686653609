use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("arguments share a common factor")]
    SharedFactor,
    #[error("place above 2 is not allowed here")]
    EvenPlace,
    #[error("element has even norm")]
    EvenElement,
    #[error("not a quadratic residue")]
    NotAResidue,
    #[error("modulus is not admissible: {0}")]
    BadModulus(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element is not primary")]
    NotPrimary,
    #[error("no primary associate exists in this residue class")]
    NoPrimaryAssociate,
    #[error("radicand is not squarefree")]
    NotSquarefree,
    #[error("not a fundamental discriminant: {0}")]
    NotFundamental(i64),
    #[error("prime does not split in the target field")]
    NotSplit,
    #[error("argument lies in a bad residue class: {0}")]
    BadResidueClass(String),
    #[error("radicand generates a trivial extension")]
    TrivialExtension,
    #[error("order is not monogenic over the base at 2")]
    NonMonogenicAtTwo,
    #[error("unit search exhausted at coordinate height 2^{bound_log2}")]
    SearchExhausted { bound_log2: u32 },
    #[error("unit rank {0} is unsupported (rank 1 required)")]
    WrongRank(u8),
    #[error("class group result could not be certified")]
    UncertifiedResult,
    #[error("effort limit exceeded: {0}")]
    EffortExceeded(String),
    #[error("extension is not ramified at exactly the two given primes: {0}")]
    NotTwoRamified(String),
    #[error("uncertified dependency: {0}")]
    UncertifiedDependency(String),
    #[error("p and q must be congruent mod 4")]
    BadCongruence,
    #[error("no unit lift with the requested norm was found")]
    LiftNotFound,
    #[error("parse error: {0}")]
    Parse(String),
}
