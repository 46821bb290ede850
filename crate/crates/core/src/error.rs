use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u8, u8),
    #[error("rewrite budget of {0} rule applications exhausted")]
    BudgetExhausted(usize),
    #[error("generator {0} has no image")]
    UnknownGenerator(String),
    #[error("unsupported rank n = {0}: {1}")]
    UnsupportedRank(usize, &'static str),
    #[error("matrix is not strictly triangular plus identity")]
    NotTriangular,
    #[error("bad tensor slot: {0}")]
    BadSlot(String),
    #[error("representation relation `{0}` fails")]
    RelationFailure(String),
    #[error("invalid rewrite rule: {0}")]
    InvalidRule(String),
    #[error("unknown checks: {}", .0.join(", "))]
    UnknownChecks(Vec<String>),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("numeric evaluation refused: {0}")]
    NumericRefused(String),
    #[error("counit is undefined on {0}")]
    NoCounit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
