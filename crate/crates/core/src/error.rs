use thiserror::Error;

use crate::sequence::VerificationFailure;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the range the operation is defined on.
    #[error("{what} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: u64,
        min: u64,
        max: u64,
    },

    /// The requested width is valid but exceeds a configured resource limit.
    #[error("m = {m} exceeds the {what} limit of {limit}")]
    LimitExceeded {
        what: &'static str,
        m: usize,
        limit: usize,
    },

    #[error("sequences have different widths (m = {left} and m = {right})")]
    WidthMismatch { left: usize, right: usize },

    #[error("not a stepping sequence: {0}")]
    NotStepping(VerificationFailure),

    #[error("empty sequence has no first or last move")]
    EmptySequence,

    #[error("labels {0:?} are not a permutation of 0..m")]
    NotAPermutation(Vec<u8>),

    #[error("words do not list every {0}-bit value exactly once")]
    NotAPermutationOfWords(usize),

    #[error("search budget exhausted after {nodes} nodes ({found} sequences found so far)")]
    BudgetExhausted { nodes: u64, found: u64 },

    #[error("orbit grew past {limit} sequences")]
    OrbitTooLarge { limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by a resource cap rather than a bad argument.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::LimitExceeded { .. }
                | Error::BudgetExhausted { .. }
                | Error::OrbitTooLarge { .. }
        )
    }
}
