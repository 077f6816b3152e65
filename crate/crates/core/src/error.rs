use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("undeclared proposition `{0}`")]
    UndeclaredProposition(String),

    #[error("automaton is not deterministic")]
    Nondeterministic,

    #[error("automaton is not total: state {state} has no successor on letter {letter}")]
    NotTotal { state: usize, letter: String },

    #[error("automaton is not a Büchi automaton (colors must lie in {{1, 2}})")]
    NotBuchi,

    #[error("automaton is not a safety automaton (all colors must be 0)")]
    NotSafety,

    #[error("tree automaton is not pruned: state {0} has an empty language")]
    NotPruned(usize),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("determinization exceeded the budget of {limit} states")]
    StateBudgetExceeded { limit: usize },

    #[error("enumeration guard exceeded: {0}")]
    EnumerationGuard(String),

    #[error("HOA line {line}: {message}")]
    Hoa { line: usize, message: String },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

impl Error {
    /// True for errors that stem from resource caps rather than malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::StateBudgetExceeded { .. } | Error::EnumerationGuard(_)
        )
    }

    pub(crate) fn hoa(line: usize, message: impl Into<String>) -> Self {
        Error::Hoa {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}
