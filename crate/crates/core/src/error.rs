use thiserror::Error;

/// Failure to place a rating on the unit interval.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScaleError {
    #[error("scale upper bound {hi} must exceed lower bound {lo}")]
    EmptyRange { lo: f64, hi: f64 },
    #[error("rating {value} outside declared scale [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("invalid scale {0:?}: expected <lo>-<hi>, e.g. 0-1 or 1-9")]
    Syntax(String),
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: expected 4 tab-separated fields, found {found}")]
    Arity { line: usize, found: usize },
    #[error("line {line}, column {column}: {reason}")]
    Malformed {
        line: usize,
        column: &'static str,
        reason: String,
    },
    #[error("line {line}: duplicate term {term:?}")]
    Duplicate { line: usize, term: String },
    #[error("reading lexicon: {0}")]
    Io(#[from] std::io::Error),
}

impl LexiconError {
    /// 1-based line number of the offending row, when the error is row-specific.
    pub fn line(&self) -> Option<usize> {
        match self {
            LexiconError::Arity { line, .. }
            | LexiconError::Malformed { line, .. }
            | LexiconError::Duplicate { line, .. } => Some(*line),
            LexiconError::Io(_) => None,
        }
    }
}

/// Invalid mapping configuration, rejected at construction.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid mapping config field `{field}`: {reason}")]
pub struct ConfigError {
    pub field: &'static str,
    pub reason: String,
}

impl ConfigError {
    pub(crate) fn new(field: &'static str, reason: impl Into<String>) -> Self {
        ConfigError {
            field,
            reason: reason.into(),
        }
    }
}

/// A color that no emotion maps to under the active configuration.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("color out of gamut: {component} = {value} outside mapped range [{min}, {max}]")]
pub struct GamutError {
    pub component: &'static str,
    pub value: f64,
    pub min: f64,
    pub max: f64,
}

/// A broken internal precondition between pipeline stages.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("internal invariant violated: {0}")]
pub struct InvariantError(pub String);
