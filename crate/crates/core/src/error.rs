use std::fmt;

/// Errors surfaced by solvers and functional evaluations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The requested bound state does not exist for this potential/coupling.
    NoBoundState { requested: usize, available: usize },
    /// An iteration failed to converge within its budget.
    Convergence(String),
    /// Parameters outside the domain a routine supports.
    InvalidInput(String),
    /// A requested quantity is not defined for this potential shape.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoBoundState {
                requested,
                available,
            } => write!(
                f,
                "bound state #{requested} requested but only {available} exist"
            ),
            Error::Convergence(msg) => write!(f, "failed to converge: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
