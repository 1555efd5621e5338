use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("germ is not invariant under x1 -> -x1: {0}")]
    NotInvariant(String),

    #[error("no normal-form template matches: {0}")]
    NotATemplate(String),

    #[error("coefficients must be +1 or -1, found {0}")]
    NonUnitCoefficient(i64),

    #[error("action {action} is incompatible with {what}")]
    IncompatibleAction { action: String, what: String },

    #[error("unsupported action: {0}")]
    UnsupportedAction(String),

    #[error("degree {m} is outside the validity range (1..={bound}) for {germ}")]
    OutOfRange { germ: String, m: u32, bound: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rational function has no integer expansion in 1/u")]
    NotExpandable,

    #[error("series agree on every computed coefficient and neither tail is known")]
    IncomparableTails,

    #[error("the two evaluation paths disagree for {what}: {closed} vs {oracle}")]
    DualPathMismatch {
        what: String,
        closed: String,
        oracle: String,
    },

    #[error("no verdict clause applies to {0}")]
    NoClause(String),
}

pub type Result<T> = std::result::Result<T, Error>;
