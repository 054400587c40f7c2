use thiserror::Error;

/// Errors raised by the decomposition pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation was called outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input text could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The initial of chain polynomial `index` (0-based) vanishes at some zero
    /// of the chain below it.
    #[error("not a regular chain: initial `{initial}` of polynomial #{} is a zero divisor modulo the chain below it", .index + 1)]
    NotRegular { index: usize, initial: String },

    /// Bisection exceeded the configured depth cap.
    #[error("isolation depth cap of {cap} bisections exceeded (is the chain simple?)")]
    DepthCap { cap: usize },

    /// Dual-space computation did not stabilize within the order cap.
    #[error("dual space did not stabilize by order {cap} (last nullity {nullity})")]
    OracleCap { cap: usize, nullity: usize },

    /// A mathematical invariant of the algorithms was violated. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
