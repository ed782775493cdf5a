use alloc::string::String;

/// Everything that can go wrong in the core library.
///
/// An infinite colength is *not* an error; see [`crate::Value`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at offset {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid ring declaration: {0}")]
    InvalidRing(String),
    #[error("step budget of {limit} reduction steps exhausted")]
    BudgetExhausted { limit: u64 },
    #[error("computation interrupted by the time budget")]
    Interrupted,
    #[error("genericity certification failed: {0}")]
    CertificationFailed(String),
    #[error("variable name collision: `{0}`")]
    NameCollision(String),
    #[error("`{0}` does not vanish at the origin")]
    NotAtOrigin(String),
    #[error("operation requires a local monomial ordering")]
    NeedsLocalOrdering,
    #[error("the quotient module is zero")]
    ZeroModule,
    #[error("{0} is infinite")]
    Infinite(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
