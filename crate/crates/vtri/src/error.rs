use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not finite (negative valuation), no standard part")]
    NotFinite,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("resource limit exceeded: {what}")]
    ResourceLimit { what: String },

    #[error("intersection condition violated between {left} and {right} (witness {witness})")]
    IntersectionViolation {
        left: String,
        right: String,
        witness: String,
    },

    #[error("not a V-simplex: {witness}")]
    NotVSimplex { witness: String },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("trichotomy violated on piece {piece} between members {f} and {g}: signs {signs}")]
    TrichotomyViolation {
        piece: String,
        f: usize,
        g: usize,
        signs: String,
    },

    #[error("point outside the domain of the map")]
    OutsideDomain,

    #[error("map is not invertible: points {x} and {y} share the image {image}")]
    NotInvertible { x: String, y: String, image: String },

    #[error("map induces no standard-part map: vertices {a} and {b} have equal st but images with st {fa} vs {fb}")]
    NotInduced {
        a: String,
        b: String,
        fa: String,
        fb: String,
    },

    #[error("bad direction: {0}")]
    BadDirection(String),

    #[error("direction search exhausted after {budget} candidates")]
    SearchExhausted { budget: usize },

    #[error("star condition still violated after subdivisions: {0}")]
    StarConditionViolation(String),

    #[error("internal lifting consistency check failed: {0}")]
    LiftingCheckFailed(String),

    #[error("empty set where a nonempty set is required")]
    EmptySet,

    #[error("family has empty sections for all small positive parameters")]
    EmptyFamily,

    #[error("family coefficients must be rational: {0}")]
    NonRationalFamily(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unresolved reference to `{0}`")]
    UnresolvedReference(String),
}

pub type Result<T> = std::result::Result<T, Error>;
