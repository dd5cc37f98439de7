use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation contains a cycle through index {0}")]
    CycleDetected(usize),
    #[error("index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("({0}, {1}) is not a successor pair")]
    NotSuccessorPair(usize, usize),
    #[error("ground set must be nonempty")]
    EmptyGround,
    #[error("brick {0} is empty")]
    EmptyBrick(usize),
    #[error("bricks do not cover the ground set")]
    CoverageFailure,
    #[error("images of the two injections do not overlap")]
    EmptyOverlap,
    #[error("walls live over different ground sets ({0} and {1})")]
    GroundMismatch(usize, usize),
    #[error("map into 1..={0} is not injective or leaves the target")]
    NotInjective(usize),
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("ground set of size {0} exceeds the supported maximum")]
    GroundTooLarge(usize),
    #[error("invalid wall: {0}")]
    InvalidWall(crate::wall::Violation),
    #[error("budget exceeded for {what} (requested {requested})")]
    BudgetExceeded { what: &'static str, requested: usize },
    #[error("negative dimension at arity {0}")]
    NegativeDimension(usize),
    #[error("right action freeness not asserted for a composition product")]
    FreenessNotAsserted,
    #[error("dimension {value_arity} not divisible by {divisor_arity}! under a free action")]
    NotFree { value_arity: usize, divisor_arity: usize },
    #[error("fast and enumerative products disagree at arity {0}")]
    OracleMismatch(usize),
    #[error("block sizes do not match")]
    SizeMismatch,
    #[error("merging the two colours does not give a colouring")]
    InvalidMerge,
    #[error("boundary squared is nonzero in degree {0}")]
    SignConventionBroken(usize),
    #[error("matrix dimensions {0}x{1} and {2}x{3} are incompatible")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("parse error: {0}")]
    Parse(alloc::string::String),
}
