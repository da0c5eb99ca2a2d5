use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter combination outside the range an object is defined for.
    #[error("constraint `{constraint}` violated: {detail}")]
    Constraint {
        constraint: &'static str,
        detail: String,
    },

    /// An argument that is not a member of the structure it was passed to.
    #[error("domain error: {0}")]
    Domain(String),

    /// A closed formula queried outside the range in which it was proved.
    #[error("precondition `{clause}` not met: {detail}")]
    Precondition {
        clause: &'static str,
        detail: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn constraint(constraint: &'static str, detail: impl Into<String>) -> Error {
    Error::Constraint {
        constraint,
        detail: detail.into(),
    }
}

pub(crate) fn precondition(clause: &'static str, detail: impl Into<String>) -> Error {
    Error::Precondition {
        clause,
        detail: detail.into(),
    }
}
