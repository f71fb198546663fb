//! Error types shared across the crate.

use thiserror::Error;

/// Error while parsing a word or an automaton from text.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid symbol {text:?}")]
    BadSymbol { text: String },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Other(String),
}

impl ParseError {
    pub fn bad_symbol(text: &str) -> ParseError {
        ParseError::BadSymbol { text: text.to_string() }
    }

    pub fn at_line(line: usize, message: impl Into<String>) -> ParseError {
        ParseError::Line { line, message: message.into() }
    }

    pub fn other(message: impl Into<String>) -> ParseError {
        ParseError::Other(message.into())
    }
}

/// Error raised by the run engines.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    /// The word uses a symbol outside the automaton's alphabet.
    #[error("symbol {symbol} does not fit an alphabet with {agents} agents")]
    SymbolOutOfRange { symbol: String, agents: u32 },
    /// The operation is only defined for co-Buchi automata.
    #[error("operation requires a co-Buchi automaton")]
    RequiresCoBuchi,
    /// The operation is only defined for automata in normal form.
    #[error("operation requires a co-Buchi automaton in normal form")]
    RequiresNormalForm,
    /// A resource cap was exceeded while expanding a compressed word.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    /// A query against an analysis result that it cannot answer.
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

/// Error raised when validating a run descriptor against an automaton.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error("run stem must start at the initial state")]
    WrongStart,
    #[error("stem length {got} is shorter than the word prefix {want}")]
    StemTooShort { got: usize, want: usize },
    #[error("loop length {got} is not a positive multiple of the cycle length {cycle}")]
    BadLoopLength { got: usize, cycle: usize },
    #[error("alignment {got} does not match the stem length {want}")]
    BadAlignment { got: u64, want: u64 },
    #[error("no transition from state {from} on symbol {symbol} to state {to} (position {position})")]
    MissingTransition { from: u32, symbol: String, to: u32, position: u64 },
    #[error("loop does not satisfy the acceptance condition")]
    LoopNotAccepting,
}
