use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer set must be nonempty")]
    EmptySet,
    #[error("duplicate element {0} in integer set")]
    DuplicateElement(i64),
    #[error("set needs at least {needed} elements, got {got}")]
    TooSmall { needed: usize, got: usize },
    #[error("set has {got} elements, at most {max} supported here")]
    TooLarge { max: usize, got: usize },
    #[error("set must have exactly {expected} elements, got {got}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{k} is not a unit modulo {q}")]
    NotUnit { k: i64, q: u64 },
    #[error("coloring needs at least one color")]
    NoColors,
    #[error("color {color} at position {position} is out of range for {num_colors} colors")]
    ColorOutOfRange {
        position: usize,
        color: u32,
        num_colors: u32,
    },
    #[error("coloring word has length {got}, expected period {expected}")]
    PeriodMismatch { expected: usize, got: usize },
    #[error("cardinality {0} is not a prime power")]
    NotPrimePower(usize),
    #[error("coloring is not polychromatic for the given set")]
    NotPolychromatic,
    #[error("coloring uses {got} colors, expected {expected}")]
    ColorCountMismatch { expected: u32, got: u32 },
    #[error("tiling witness does not give an exact cover: {0}")]
    InvalidWitness(String),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("parity condition violated: {0}")]
    Parity(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid projection vector: {0}")]
    InvalidProjection(String),
    #[error("set is not collinear")]
    NotCollinear,
    #[error("set must contain the origin")]
    MissingOrigin,
    #[error("quadruple parameters invalid: {0}")]
    InvalidQuad(String),
    #[error("diameter {0} is below the constructive threshold")]
    BelowThreshold(i64),
    #[error("construction failed verification in subcase {subcase}: {detail}")]
    ConstructionFailed { subcase: String, detail: String },
    #[error("no witness found: {0}")]
    NoWitness(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
