use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} > tolerance {tolerance:e}")]
    QuadratureFailure {
        estimate: f64,
        error: f64,
        tolerance: f64,
    },

    #[error("non-finite Monte Carlo sample in chunk {chunk}")]
    NonFiniteSample { chunk: u64 },
}

impl Error {
    /// True for failures of a numerical method, as opposed to bad inputs.
    pub fn is_numerical_failure(&self) -> bool {
        !matches!(self, Error::InvalidArgument(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
