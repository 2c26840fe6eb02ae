use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Inputs that violate a type invariant (dimensions, ranges, signs).
    #[error("invalid input: {0}")]
    Validation(String),

    /// Inputs that are individually valid but violate an operation precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    /// Observation point on (or numerically indistinguishable from) a current path.
    #[error("field singularity: {0}")]
    Singularity(String),

    #[error("index {index} out of range for {len} states")]
    IndexOutOfRange { index: usize, len: usize },

    /// Rejection sampling ran out of candidates.
    #[error(
        "candidate budget of {budget} exhausted with {accepted} accepted \
         (empirical acceptance rate {rate:.3e})"
    )]
    BudgetExhausted {
        budget: u64,
        accepted: usize,
        rate: f64,
    },
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
