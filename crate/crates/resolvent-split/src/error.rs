use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// Two vectors that must live in the same space do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// Problem data must consist of finite floats.
    #[error("non-finite entry in input data")]
    NonFiniteData,

    /// A scalar or structural parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A matrix supplied as a monotone map fails the monotonicity test.
    #[error("matrix is not monotone: symmetric part has minimum eigenvalue {min_eigenvalue:.6e}")]
    NotMonotone { min_eigenvalue: f64 },

    /// An iterate left the set of finite vectors; the run cannot continue.
    #[error("non-finite iterate at iteration {iteration} ({detail})")]
    NonFiniteIterate { iteration: usize, detail: String },
}

impl Error {
    pub(crate) fn check_dims(left: usize, right: usize) -> Result<(), Error> {
        if left == right {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left, right })
        }
    }
}
