//! Falsification harness for co-Buchi automata claimed to recognize the
//! promise/fulfillment language family: either find a word on which the
//! automaton and the language provably disagree, or certify that the
//! automaton carries at least `k * floor(k^(4/3) / 4)` states after
//! normalization (half that before), by exhibiting `k` pairwise disjoint
//! per-agent state sets.
//!
//! The search works exclusively on probe words — one promising agent and
//! one repeated agent — whose canonical earliest-accepting runs are
//! sampled at block boundaries by the compressed run engine. All
//! counterexample candidates are cut and glued out of those runs ([`word`
//! surgery](crate::pumped_word)), and every candidate is re-verified from
//! scratch against the independent membership oracle and the acceptance
//! procedures before it is reported. The outcome is a [`Verdict`]:
//! verified counterexample, lower-bound witness, or an explicit
//! inconclusive with the reason.

mod collide;
mod early;
mod falsify;
mod matrix;
mod probe;
mod verdict;
mod word;

pub use collide::{scan_collisions, Collision};
pub use early::check_early_accept;
pub use falsify::{falsify, falsify_with, FalsifyConfig, FalsifyError};
pub use matrix::{build_state_matrix, matrix_cols, MatrixOutcome, StateMatrix};
pub use probe::{block_position, probe_one, probe_pairs, ProbeOutcome, RunProbe};
pub use verdict::{
    AgentWitness, CheckOrigin, Counterexample, Direction, Verdict, Witness, WitnessKind,
};
pub use word::{path_to_word, plan_path, pumped_word, spliced_word, PathPlan};
