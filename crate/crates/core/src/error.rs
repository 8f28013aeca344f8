use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("field towers do not match: {0} vs {1}")]
    TowerMismatch(String, String),

    #[error("term {term} has negative order in uniformizer {stage}; not in the valuation ring")]
    NotIntegral { term: String, stage: usize },

    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    #[error("exponent {0:?} is not in the support")]
    NotInSupport(Vec<i64>),

    #[error("substitution vector {b:?} collides exponents {first:?} and {second:?}")]
    NonInjective { b: Vec<i64>, first: Vec<i64>, second: Vec<i64> },

    #[error("stage {stage} does not match tower height {height}")]
    StageMismatch { stage: usize, height: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("not a member of the tropical variety")]
    NotInTrop,

    #[error("expected a univariate polynomial, found {0} variables")]
    NotUnivariate(usize),

    #[error("polynomial is constant; it has no roots")]
    Constant,

    #[error("fewer than two generators; no bounded edge")]
    TooFewGenerators,

    #[error("cell limit of {0} exceeded")]
    TooManyCells(usize),

    #[error("polyhedron is empty")]
    EmptyPolyhedron,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("{0}")]
    Unsupported(String),
}
