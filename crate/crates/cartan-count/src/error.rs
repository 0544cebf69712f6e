use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A soft size guard tripped.  Names the limiting parameter so callers
    /// can decide whether to override it.
    #[error("guard exceeded: {what} is {actual}, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        actual: u64,
        limit: u64,
    },

    /// `M(a,b,c,d)` is empty because the total mass differs between rows
    /// and columns.
    #[error("empty margin spec: {a}*{b} != {c}*{d}, so M({a},{b},{c},{d}) is empty")]
    EmptySpec {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },

    /// A matrix failed a required margin precondition.
    #[error("margin violation: {0}")]
    MarginViolation(String),

    /// Operand shapes are incompatible.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Two permutations over different parameter triples were combined.
    #[error("parameter mismatch: expected ({0}, {1}, {2})")]
    ParamsMismatch(usize, usize, usize),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
