use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {deviation:e}")]
    AsymmetricInput { row: usize, col: usize, deviation: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("matrix is not positive definite (eigenvalue {eigenvalue:e}, largest {largest:e})")]
    NotPositiveDefinite { eigenvalue: f64, largest: f64 },

    #[error("eigenvalues {first:e} and {second:e} do not form a +/- pair")]
    UnpairedSpectrum { first: f64, second: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("system is unstable: smallest eigenvalue of K - Y^2 is {min_eigenvalue:e}")]
    UnstableSystem { min_eigenvalue: f64 },

    #[error("closed form undefined: {0}")]
    DegenerateParameters(String),

    #[error("oscillator index {index} out of range for {n_modes} modes")]
    IndexOutOfRange { index: usize, n_modes: usize },

    #[error("oscillator index {0} appears more than once")]
    DuplicateIndex(usize),

    #[error("subsystem is empty")]
    EmptySubsystem,

    #[error("position-momentum block is not zero (max |entry| {max_abs:e})")]
    CrossBlockNotZero { max_abs: f64 },

    #[error("angle-average oracle supports at most {max} modes, got {n}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("grid of {0} points per angle is too coarse (need at least 16)")]
    GridTooCoarse(usize),

    #[error("symplectic eigenvalue {0} is below the 1/2 floor")]
    SubHeisenberg(f64),

    #[error("alpha = {0} is outside the allowed domain")]
    AlphaOutOfDomain(f64),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("covariance was built from unequal action variables; no common scale")]
    NonUniformScale,

    #[error("groups overlap: {0}")]
    OverlappingGroups(String),

    #[error("degenerate regression design: {0}")]
    DegenerateDesign(String),

    #[error("parameter {0} is not identifiable from the data")]
    Unidentifiable(&'static str),

    #[error("field `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { field: field.into(), message: message.into() }
    }

    /// True when the error stems from bad user input rather than a numerical failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::AsymmetricInput { .. }
                | Error::DimensionMismatch(_)
                | Error::InvalidModel(_)
                | Error::IndexOutOfRange { .. }
                | Error::DuplicateIndex(_)
                | Error::EmptySubsystem
                | Error::DimensionTooLarge { .. }
                | Error::GridTooCoarse(_)
                | Error::AlphaOutOfDomain(_)
                | Error::OverlappingGroups(_)
                | Error::Parse { .. }
                | Error::InvalidInput(_)
                | Error::Io(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
