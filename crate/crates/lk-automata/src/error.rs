use thiserror::Error;

/// Errors from the automaton builders.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    /// The alphabet parameter must be at least 1.
    #[error("the alphabet parameter k must be at least 1")]
    InvalidK,
    /// The requested automaton does not fit the 32-bit state id space.
    #[error("k = {k} needs {states} states, which exceeds the supported range")]
    TooLarge { k: u32, states: u64 },
}
