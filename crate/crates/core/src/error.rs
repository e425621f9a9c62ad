use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grafting needs at least 2 arguments, got {0}")]
    Arity(usize),

    #[error("leaf index {index} out of range for a monomial with {degree} leaves")]
    LeafIndex { index: usize, degree: usize },

    #[error("the unit monomial has no leaves")]
    UnitHasNoLeaves,

    #[error("x-degree {requested} lies beyond the series precision {precision}")]
    Precision { requested: usize, precision: usize },

    #[error("substituted series must have x-order at least 1")]
    OrderViolation,

    #[error("expected a series in x only, found y-labelled monomial {0}")]
    YPresent(String),

    #[error("series is not normalized: coefficient of x is {0}, expected 1")]
    NotNormalized(String),

    #[error("arity parameter k must be at least 2, got {0}")]
    InvalidK(u32),

    #[error("closed form is only available for degrees 1..=4, got {0}")]
    ClosedFormDegree(usize),

    #[error("composite over a tree with {leaves} leaves got {args} arguments")]
    ArgumentCount { leaves: usize, args: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
