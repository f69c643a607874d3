use thiserror::Error;

/// Errors raised by the library.  Every variant that "must not occur" for
/// valid input doubles as a self-check and is reported rather than hidden.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the two operators share an eigenvalue (Sylvester equation not uniquely solvable)")]
    CommonEigenvalue,
    #[error("characteristic polynomial does not split over the rationals")]
    NotSplitOverBase,
    #[error("B1 has a repeated eigenvalue {0}")]
    RepeatedEigenvalue(String),
    #[error("datum is not stable: {0}")]
    NotStable(String),
    #[error("degenerate block frame: {0}")]
    DegenerateFrame(String),
    #[error("entry ({row},{col}) of {matrix} has a pole at t = 0")]
    PoleAtZero {
        matrix: String,
        row: usize,
        col: usize,
    },
    #[error("closure subspace differs from the closed form: {0}")]
    ClosedFormMismatch(String),
    #[error("containment violated: {0}")]
    ContainmentViolation(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("no generic choice found after {0} attempts")]
    GenericityFailure(usize),
    #[error("series mismatch at u^{order}: expected {expected}, got {got}")]
    SeriesMismatch {
        order: usize,
        expected: String,
        got: String,
    },
    #[error("solution set differs from the claimed subspace: {0}")]
    SetMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI and the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::CommonEigenvalue => "common_eigenvalue",
            Error::NotSplitOverBase => "not_split_over_base",
            Error::RepeatedEigenvalue(_) => "repeated_eigenvalue",
            Error::NotStable(_) => "not_stable",
            Error::DegenerateFrame(_) => "degenerate_frame",
            Error::PoleAtZero { .. } => "pole_at_zero",
            Error::ClosedFormMismatch(_) => "closed_form_mismatch",
            Error::ContainmentViolation(_) => "containment_violation",
            Error::InvariantViolation(_) => "invariant_violation",
            Error::GenericityFailure(_) => "genericity_failure",
            Error::SeriesMismatch { .. } => "series_mismatch",
            Error::SetMismatch(_) => "set_mismatch",
            Error::Singular => "singular",
            Error::Unsupported(_) => "unsupported",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err(msg: impl Into<String>) -> Error {
    Error::DimensionMismatch(msg.into())
}
