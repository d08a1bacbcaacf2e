//! Error type shared by all modules of the crate.

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Graph text did not parse; `line` is 1-based.
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("graph has a sink vertex")]
    HasSink,

    #[error("graph has no global sink")]
    NoGlobalSink,

    #[error("state is not a unicycle")]
    NotUnicycle,

    /// An exhaustive enumeration would touch more states than allowed.
    #[error("state budget exceeded: {needed} states needed, budget is {budget}")]
    BudgetExceeded { needed: BigInt, budget: u64 },

    /// A rotor walk did not terminate within its step budget.
    #[error("step budget of {budget} exhausted")]
    StepBudgetExceeded { budget: u64 },

    /// Rejection sampling never produced a strongly connected graph.
    #[error("rejection sampling gave up after {attempts} attempts")]
    RejectionBudgetExceeded { attempts: u64 },

    #[error("index {index} out of range for {rows}x{cols} matrix")]
    IndexOutOfRange {
        index: usize,
        rows: usize,
        cols: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The element has infinite order in the quotient group, which happens
    /// exactly when the vector is outside the rational span of the basis.
    #[error("element has infinite order in the quotient group")]
    InfiniteOrder,

    #[error("power iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: u64 },

    /// A formula value disagreed with its brute-force cross-check.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}
