use thiserror::Error;

use crate::tensor_ops::TensorLabel;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A matrix or tensor set violates one of its invariants.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("incomplete tensor set, missing labels: {}", format_labels(.missing))]
    Incomplete { missing: Vec<TensorLabel> },

    /// A result that should be real by construction came out complex, or a
    /// similar internal guarantee did not hold.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("grid band limit {actual} is below the required {required}")]
    BandLimit { required: u32, actual: u32 },

    #[error("non-finite integrand value at node {index} (theta = {theta}, phi = {phi})")]
    NonFinite { index: usize, theta: f64, phi: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

fn format_labels(labels: &[TensorLabel]) -> String {
    labels
        .iter()
        .map(|l| format!("({}, {})", l.k, l.q))
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    /// Process exit status for the command-line front end: 2 for bad
    /// arguments, 3 for invalid input, 4 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 2,
            Error::Validation(_) | Error::Incomplete { .. } | Error::Parse(_) | Error::Io(_) => 3,
            Error::Consistency(_) | Error::BandLimit { .. } | Error::NonFinite { .. } => 4,
        }
    }
}
