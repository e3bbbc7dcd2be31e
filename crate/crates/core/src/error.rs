use thiserror::Error;

/// Errors raised anywhere in the analysis pipeline.
///
/// The variants split into input problems (bad graph6, disconnected graph,
/// unsupported parameters) and internal consistency failures. The latter are
/// identities failing at runtime and always indicate a bug or a numerical
/// breakdown.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("size cap exceeded: {requested} vertices requested, cap is {cap}")]
    Capacity { requested: u128, cap: usize },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("module decomposition failed after {attempts} attempts: {reason}")]
    DecompositionFailure { attempts: usize, reason: String },

    #[error("module profile error: {0}")]
    Profile(String),

    #[error("module is not thin within tolerance: {0}")]
    NotThin(String),

    #[error("classification inconsistency: {0}")]
    ClassificationInconsistency(String),
}

impl Error {
    /// True for errors caused by user input rather than by the engine.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Validation(_)
                | Error::Capacity { .. }
                | Error::UnsupportedParameter(_)
                | Error::Argument(_)
        )
    }

    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Validation(_) => "validation",
            Error::Capacity { .. } => "capacity",
            Error::UnsupportedParameter(_) => "unsupported_parameter",
            Error::Argument(_) => "argument",
            Error::Consistency(_) => "consistency",
            Error::DecompositionFailure { .. } => "decomposition_failure",
            Error::Profile(_) => "profile",
            Error::NotThin(_) => "not_thin",
            Error::ClassificationInconsistency(_) => "classification_inconsistency",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
