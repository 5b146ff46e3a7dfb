use std::fmt;

use thiserror::Error;

/// Location of a tau value, used to name degenerate denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TauIndex {
    Gl2 { k: i64, alpha: i64 },
    Gl3 { k: i64, l: i64, alpha: i64, beta: i64 },
}

impl TauIndex {
    /// Index components as `(name, value)` pairs, in canonical order.
    pub fn components(&self) -> Vec<(&'static str, i64)> {
        match *self {
            TauIndex::Gl2 { k, alpha } => vec![("k", k), ("alpha", alpha)],
            TauIndex::Gl3 { k, l, alpha, beta } => {
                vec![("k", k), ("l", l), ("alpha", alpha), ("beta", beta)]
            }
        }
    }
}

impl fmt::Display for TauIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauIndex::Gl2 { k, alpha } => write!(f, "tau_{k}^({alpha})"),
            TauIndex::Gl3 { k, l, alpha, beta } => write!(f, "tau_{{{k},{l}}}^({alpha},{beta})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left}x{left} against {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{field}: {message}")]
    Parse { field: String, message: String },

    /// A tau value needed as a denominator (or as the normalization of a
    /// polynomial) vanished.
    #[error("degenerate input: {index} = 0 ({context})")]
    Degenerate { index: TauIndex, context: String },

    #[error("resource bound exceeded: {what} needs {requested}, limit is {limit}")]
    Resource {
        what: String,
        requested: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn degenerate(index: TauIndex, context: impl Into<String>) -> Self {
        Error::Degenerate {
            index,
            context: context.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
