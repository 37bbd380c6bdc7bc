use thiserror::Error;

use crate::arith::FactoredInteger;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a positive integer, got {0}")]
    NonPositive(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("value exceeds 64-bit range: {0}")]
    Overflow(FactoredInteger),

    #[error("conductor exponent {conductor} is below {min} for degree {degree}")]
    ConductorBelowDegree { conductor: u32, degree: u32, min: u32 },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("component dimensions sum to {sum}, expected rank {rank}")]
    RankMismatch { sum: u32, rank: u32 },
    #[error("claimed twisted conductor {claimed} lies outside the admissible range [{lo}, {hi}]")]
    OutsideRange { claimed: u32, lo: u32, hi: u32 },
    #[error("expected two one-dimensional components of equal conductor exponent")]
    NotBalancedPrincipalSeries,
    #[error("conductor exponent {exponent} at {place} is not divisible by {n}")]
    NotDivisible { place: u64, exponent: u32, n: u32 },

    #[error("characters have different moduli {0} and {1}")]
    ModulusMismatch(FactoredInteger, FactoredInteger),
    #[error("cannot induce a character mod {from} to modulus {to}")]
    NotAMultiple { from: FactoredInteger, to: FactoredInteger },
    #[error("exponent vector has {got} entries, unit group has {want} blocks")]
    BlockCount { got: usize, want: usize },
    #[error("malformed character label {0:?}")]
    BadLabel(String),

    #[error("gl2-trivial-central mode requires rank 2, got {0}")]
    ModeRank(u32),
    #[error("primes must be distinct, got {0} twice")]
    RepeatedPrime(u64),
    #[error("twisted data is inconsistent with the bound: {0}")]
    CertificateFailed(String),

    #[error("places do not match: {0}")]
    PlaceMismatch(String),
    #[error("parameter {0} lies outside the unitary strip |Re nu| <= 1/2")]
    OutsideStrip(String),
    #[error("two-dimensional real summand needs k >= 1, got {0}")]
    BadWeight(i64),
    #[error("representation dimension {got} does not match rank {want}")]
    DimensionMismatch { got: u32, want: u32 },
    #[error("inconsistent global data: {0}")]
    Inconsistent(String),

    #[error("tables have ranks {0} and {1}")]
    TableRank(u32, u32),
    #[error("invalid eigenvalue table: {0}")]
    InvalidTable(String),
    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),
}
