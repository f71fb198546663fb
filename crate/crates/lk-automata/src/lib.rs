//! Generated automaton families for the promise language.
//!
//! For each alphabet parameter `k` this crate builds two automata
//! recognizing the same language (the membership predicate implemented in
//! `lk-language`): a nondeterministic Buchi automaton of `20k^2 + 2k + 3`
//! states and a nondeterministic co-Buchi automaton of
//! `16k^3 + 8k^2 + 2k + 3` states, the latter already in normal form. The
//! id scheme both builders follow lives in [`Layout`]; entry points are
//! [`build_nbw`] and [`build_ncw`].

mod build;
mod error;
mod layout;

pub use build::{build_nbw, build_ncw};
pub use error::BuildError;
pub use layout::{nbw_state_count, ncw_state_count, Layout, WatchPhase};
