use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("arities {left:?} and {right:?} differ")]
    SignatureMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("element {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("arity {arity} or carrier size {size} outside the configured bounds (arity 2..={max_arity}, size 1..={max_size})")]
    ArityBound {
        arity: usize,
        size: usize,
        max_arity: usize,
        max_size: usize,
    },

    #[error("table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },

    #[error("exhaustive check needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("carrier sizes differ ({left} vs {right})")]
    CarrierMismatch { left: usize, right: usize },

    #[error("the algebra has no {0} identity")]
    NoIdentity(&'static str),

    #[error("carrier of size {size} exceeds the limit {limit} for this operation")]
    CarrierTooLarge { size: usize, limit: usize },

    #[error("partition is not a congruence")]
    NotACongruence,

    #[error("map is not a homomorphism")]
    NotAHomomorphism,

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("partition is malformed: {0}")]
    BadPartition(String),

    #[error("position {position} out of range for arity {arity}")]
    PositionOutOfRange { position: usize, arity: usize },

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("intersection of ideals is empty")]
    EmptyIntersection,

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("operator at byte {pos} has no operands")]
    EmptyOperator { pos: usize },

    #[error("atom `{0}` has no failure probability assigned")]
    UnassignedAtom(String),

    #[error("probability {0} is outside [0, 1]")]
    ProbabilityRange(String),

    #[error("order facts contain a cycle through `{0}` and `{1}`")]
    PosetCycle(String, String),

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}
