//! Core data model for nondeterministic omega-automata (Buchi and
//! co-Buchi) over indexed two-polarity alphabets, ultimately periodic
//! ("lasso") words, and the decision procedures on them:
//!
//! - membership of a lasso word in an automaton's language
//!   ([`accepts`], with run witnesses via [`witness_run`]),
//! - normal form for co-Buchi automata ([`normalize`]): no transition
//!   leaves the accepting set,
//! - canonical earliest accepting runs ([`shortest_accepting_run`] for
//!   explicit words, [`analyze_shortest_run`] for run-length-encoded words
//!   whose segment counts may be astronomically large).
//!
//! The explicit and compressed procedures implement the same recurrence and
//! agree wherever both are feasible; the compressed engine exists because
//! the automata studied downstream have millions of states and the words
//! probing them have segments of matching length.

mod automaton;
mod engine;
mod error;
mod gen;
mod lasso;
mod normalize;
mod product;
mod rle;
mod run;
mod symbol;

pub use automaton::{
    AcceptanceKind, AutomatonBuilder, OmegaAutomaton, StateId, Successors, SuccessorsIter,
};
pub use engine::{
    accepts_rle, accepts_rle_with, analyze_shortest_run, EngineLimits, ShortestRunAnalysis,
};
pub use error::{EngineError, ParseError, RunError};
pub use gen::{random_lasso, random_nbw, random_ncw, random_normal_ncw, random_rle, rng_from_seed};
pub use lasso::LassoWord;
pub use normalize::{normalize, Normalized};
pub use product::{accepts, shortest_accepting_run, witness_run};
pub use rle::{RleWord, Segment};
pub use run::{validate_run, RunDescriptor};
pub use symbol::{alphabet, Polarity, Symbol};
