use thiserror::Error;

/// Errors produced by validation, parsing and cap-guarded enumeration.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("block exponents must be strictly increasing")]
    ExponentsNotIncreasing,

    #[error("block exponents and multiplicities must be positive")]
    ZeroBlockParameter,

    #[error("group spec has no blocks")]
    EmptySpec,

    #[error("group order {order} exceeds the enumeration cap {cap}")]
    GroupOrderCap { order: u128, cap: u64 },

    #[error("endomorphism count {count} exceeds the enumeration cap {cap}")]
    EndoCountCap { count: u128, cap: u64 },

    #[error("operands belong to different groups")]
    GroupMismatch,

    #[error("image of generator {index} has order exceeding the generator's order")]
    ImageOrderViolation { index: usize },

    #[error("expected {expected} generator images, got {got}")]
    ImageCountMismatch { expected: usize, got: usize },

    #[error("indicator is not admissible for this group")]
    NotAdmissible,

    #[error("position {0} is out of range")]
    PositionOutOfRange(usize),

    #[error("cardinals are incomparable under the strict model")]
    IncomparableCardinals,

    #[error("cardinal arithmetic overflow")]
    CardinalOverflow,

    #[error("invalid ranked indicator: {0}")]
    InvalidRanked(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown claim id: {0}")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, Error>;
