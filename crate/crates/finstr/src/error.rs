use thiserror::Error;

/// Crate-wide error type. Variants carry enough context to reconstruct the
/// failing check (symbol names, offending tuples, line numbers).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("subset not closed under `{symbol}` at arguments {args:?}")]
    NotClosed { symbol: String, args: Vec<usize> },

    #[error("not a congruence: `{symbol}` maps related tuples {lhs:?} and {rhs:?} to unrelated values")]
    NotACongruence {
        symbol: String,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
    },

    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("bad table or tuple set for `{symbol}`: {msg}")]
    BadTable { symbol: String, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("arity mismatch for `{symbol}`: expected {expected}, got {got}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("trace {trace:?} too large for type classification")]
    TraceTooLarge { trace: Vec<usize> },

    #[error("not found: {0}")]
    NotFound(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("target is not a two-element semilattice: {0}")]
    TargetNotSemilattice(String),

    #[error("target is not a group: {0}")]
    TargetNotGroup(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("translation spec invalid: {0}")]
    SpecInvalid(String),

    #[error("compatibility identities not enforced: instance violates {0}")]
    CompatibilityIdentitiesNotEnforced(String),

    #[error("domain has wrong size: expected {expected}, got {got}")]
    WrongDomain { expected: usize, got: usize },

    #[error("algebra has wrong size: expected {expected}, got {got}")]
    WrongSize { expected: usize, got: usize },

    #[error("algebra is not simple")]
    NotSimple,

    #[error("system shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("io error on `{path}`: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
