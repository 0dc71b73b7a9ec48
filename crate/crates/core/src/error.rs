use thiserror::Error;

/// Raised when an input falls outside the range where a closed form is
/// defined. The message always names the violated constraint.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("constraint `{constraint}` violated: {detail}")]
    Constraint {
        constraint: &'static str,
        detail: String,
    },
    #[error("logarithm argument must be >= 1, got {0}")]
    LogArgument(i64),
}

impl DomainError {
    pub(crate) fn constraint(constraint: &'static str, detail: impl Into<String>) -> Self {
        DomainError::Constraint {
            constraint,
            detail: detail.into(),
        }
    }

    /// The short constraint text, e.g. `"a >= b"`.
    pub fn violated(&self) -> &str {
        match self {
            DomainError::Constraint { constraint, .. } => constraint,
            DomainError::LogArgument(_) => "m >= 1",
        }
    }
}
