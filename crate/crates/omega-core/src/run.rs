//! Run descriptors: finite evidence for the acceptance of a lasso word.
//!
//! A run on `prefix . cycle^omega` is itself ultimately periodic, so it can
//! be reported as a stem followed by a repeated loop. The descriptor is
//! self-contained evidence: [`validate_run`] replays it against the
//! transition relation and the acceptance condition without trusting the
//! engine that produced it.

use std::fmt;

use crate::automaton::{AcceptanceKind, OmegaAutomaton, StateId};
use crate::error::RunError;
use crate::lasso::LassoWord;

/// An ultimately periodic run. `stem[t]` is the state after reading `t`
/// letters (so `stem[0]` is the initial state), and the loop holds the
/// states at the following `loop_states.len()` positions, repeated forever.
/// `alignment` is the position index where the loop begins, which is always
/// the stem length; it is kept explicit so a descriptor can be checked
/// without reconstructing that arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDescriptor {
    pub stem: Vec<StateId>,
    pub loop_states: Vec<StateId>,
    pub alignment: u64,
}

impl RunDescriptor {
    pub fn new(stem: Vec<StateId>, loop_states: Vec<StateId>) -> RunDescriptor {
        assert!(!stem.is_empty(), "a run stem holds at least the initial state");
        assert!(!loop_states.is_empty(), "a run loop must be nonempty");
        let alignment = stem.len() as u64;
        RunDescriptor { stem, loop_states, alignment }
    }

    /// The state at position `t` (state after reading `t` letters).
    pub fn state_at(&self, t: u64) -> StateId {
        if t < self.stem.len() as u64 {
            self.stem[t as usize]
        } else {
            let off = (t - self.stem.len() as u64) % self.loop_states.len() as u64;
            self.loop_states[off as usize]
        }
    }

    /// Positions covered by the stem, i.e. the loop starts at this index.
    pub fn stem_len(&self) -> u64 {
        self.stem.len() as u64
    }

    pub fn loop_len(&self) -> u64 {
        self.loop_states.len() as u64
    }
}

impl fmt::Display for RunDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in &self.stem {
            write!(f, "{q} ")?;
        }
        write!(f, "(")?;
        let mut first = true;
        for q in &self.loop_states {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{q}")?;
            first = false;
        }
        write!(f, ")^w")
    }
}

/// Replays `run` against `a` on `w` and checks the acceptance condition.
///
/// Requirements:
/// - the stem starts at the initial state and covers at least the word
///   prefix, so the loop lies entirely inside the cycle region;
/// - the loop length is a positive multiple of the cycle length, so the
///   state repetition is consistent with the letter repetition;
/// - consecutive states (including the wrap from the last loop state back
///   to the first) are connected by transitions on the word's letters;
/// - Buchi: some loop state is accepting; co-Buchi: all loop states are.
pub fn validate_run(
    a: &OmegaAutomaton,
    w: &LassoWord,
    run: &RunDescriptor,
) -> Result<(), RunError> {
    if run.stem.first() != Some(&a.initial()) {
        return Err(RunError::WrongStart);
    }
    let s = run.stem.len() as u64 - 1;
    if s < w.prefix_len() {
        return Err(RunError::StemTooShort {
            got: run.stem.len(),
            want: w.prefix_len() as usize + 1,
        });
    }
    let l = run.loop_states.len() as u64;
    if l == 0 || l % w.cycle_len() != 0 {
        return Err(RunError::BadLoopLength {
            got: run.loop_states.len(),
            cycle: w.cycle_len() as usize,
        });
    }
    if run.alignment != run.stem.len() as u64 {
        return Err(RunError::BadAlignment { got: run.alignment, want: run.stem.len() as u64 });
    }

    let check_step = |from: StateId, position: u64, to: StateId| -> Result<(), RunError> {
        let sym = w.at(position);
        if a.successors(from, sym).contains(to) {
            Ok(())
        } else {
            Err(RunError::MissingTransition {
                from,
                symbol: sym.to_string(),
                to,
                position,
            })
        }
    };

    for t in 1..=s {
        check_step(run.stem[t as usize - 1], t, run.stem[t as usize])?;
    }
    check_step(run.stem[s as usize], s + 1, run.loop_states[0])?;
    for i in 1..l {
        check_step(run.loop_states[i as usize - 1], s + 1 + i, run.loop_states[i as usize])?;
    }
    check_step(run.loop_states[l as usize - 1], s + 1 + l, run.loop_states[0])?;

    let ok = match a.kind() {
        AcceptanceKind::Buchi => run.loop_states.iter().any(|&q| a.is_accepting(q)),
        AcceptanceKind::CoBuchi => run.loop_states.iter().all(|&q| a.is_accepting(q)),
    };
    if ok {
        Ok(())
    } else {
        Err(RunError::LoopNotAccepting)
    }
}
