use thiserror::Error;

/// Errors produced by the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: no positive coefficients")]
    EmptyInput,
    #[error("negative coefficient `{0}`")]
    NonPositiveEntry(String),
    #[error("coefficients sum to {sum}, not 1 (pass --normalize to rescale)")]
    NotNormalized { sum: String },
    #[error("cannot parse `{0}` as a decimal or fraction")]
    InvalidNumber(String),
    #[error("{requested} components exceed the component cap of {cap}")]
    ResourceLimit { requested: u128, cap: u64 },
    #[error("index {index} out of range for a vector of length {len}")]
    IndexOutOfRange { index: u64, len: u64 },
    #[error("dimension mismatch: {left} vs {right} nonzero Schmidt coefficients")]
    DimensionMismatch { left: u64, right: u64 },
    #[error("source state already majorizes the target; no catalyst needed")]
    NoSearchNeeded,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures caused by malformed or out-of-contract input.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
