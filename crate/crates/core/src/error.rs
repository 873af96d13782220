use alloc::string::String;
use alloc::vec::Vec;

/// Errors produced by the core crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed element: {0}")]
    MalformedElement(String),
    #[error("empty generating set")]
    EmptyGeneratingSet,
    #[error("the construction needs at least one central generator (K = 0)")]
    NoCentralGenerator,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("modulus {0} is invalid, moduli must be at least 2")]
    InvalidModulus(u64),
    #[error("mask index {index} out of range for a central basis of rank {rank}")]
    MaskIndexOutOfRange { index: usize, rank: usize },
    #[error("central generator {0} is already quotiented")]
    AlreadyQuotiented(usize),
    #[error("the subgroup N is trivial; the strict-inequality hypothesis requires N != {{1}}")]
    TrivialSubgroup,
    #[error("no stabilization within horizon {horizon}")]
    NoStabilization { horizon: usize },
    #[error("ball of radius {radius} exceeds the budget of {limit} vertices")]
    BallBudget { radius: usize, limit: usize },
    #[error("finite graph: c_{n} = 0, the connective constant is undefined")]
    FiniteGraph { n: usize },
    #[error("radius-2 condition violated: the ball B(2) meets N outside the identity")]
    RadiusTwoViolated,
    #[error("{quotient} is not a central quotient of {base}")]
    NotAQuotient { base: String, quotient: String },
    #[error("oracle limited to n <= {limit}, got {n}")]
    OracleTooLarge { n: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("construction depth {depth} would exceed the central rank {rank}")]
    DepthExceeded { depth: usize, rank: usize },
    #[error("no modulus m <= {m_limit} works at level {level}")]
    LevelConstructionFailure {
        level: usize,
        m_limit: u64,
        diagnostics: Vec<String>,
    },
    #[error("the two words agree on every index below {0}")]
    NoDisagreement(usize),
    #[error("word {0} is not a node of the construction")]
    UnknownWord(String),
    #[error("SAW enumeration interrupted by its budget")]
    Interrupted,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
