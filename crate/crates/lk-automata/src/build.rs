//! Builders for the two automaton families recognizing the promise
//! language.
//!
//! A word over agents `1 ..= 2k` belongs to the language when its
//! interpretation either has a zero (a plain symbol whose overline never
//! shows up again) together with some agent fulfilled at least `2k` times,
//! or is eventually all sharps. Both automata decide this by splitting
//! membership into three overlapping scenarios and running one component
//! per scenario:
//!
//! * **Sink** — the suffix is all overlined. Finitely many plain symbols
//!   force an eventually-sharp interpretation, so such words are always
//!   members. The initial state can hand any suffix to the sink, which
//!   survives exactly the all-overlined ones.
//! * **Count first, promise later** — some agent `j` is fulfilled `2k`
//!   times and *afterwards* a plain symbol opens a promise that is never
//!   settled. A global counter for `j` runs from the start of the word;
//!   when it fills up, the full state waits for a later plain `i` and
//!   commits to the trap for `i`, which survives exactly when `~i` never
//!   occurs again.
//! * **Promise first, count later** — a plain `i` opens a promise that is
//!   never settled, and some agent `j` is fulfilled often after that
//!   point. The initial state branches on a plain `i` into the per-pair
//!   block for `(i, j)`. The Buchi family checks "fulfilled infinitely
//!   often" with a 3-state watch loop whose fulfilled phase is accepting;
//!   the co-Buchi family cannot express "infinitely often" outside its
//!   accepting set, so it counts `2k` fulfillments and then enters the
//!   trap for `i`.
//!
//! Together the scenarios are exhaustive: a word with infinitely many
//! plain symbols and finitely many zeros yields infinitely many
//! fulfillments of some agent, so a member word always fits at least one
//! scenario. Each per-pair module tolerates undercounting (it may miss
//! fulfillments that straddle its entry point); the scenario split
//! guarantees some run still sees enough.
//!
//! The pair guess ranges over all `(i, j)` including `j = i`; those
//! modules demand `~i` both forbidden and read, accept nothing, and are
//! kept only to make the id arithmetic uniform.
//!
//! The co-Buchi automaton comes out in normal form: its accepting set is
//! the sink plus the traps, and both only move within themselves.

use omega_core::{alphabet, AcceptanceKind, AutomatonBuilder, OmegaAutomaton, StateId, Symbol};

use crate::error::BuildError;
use crate::layout::{nbw_state_count, ncw_state_count, Layout, WatchPhase};

fn checked_layout(k: u32, states: u64) -> Result<Layout, BuildError> {
    if k < 1 {
        return Err(BuildError::InvalidK);
    }
    // Symbol indices are u16 and state ids u32; reject parameters that
    // would overflow either before the builder asserts.
    if 4 * k as u64 > u16::MAX as u64 || states > u32::MAX as u64 {
        return Err(BuildError::TooLarge { k, states });
    }
    Ok(Layout::new(k))
}

/// Adds everything except the per-pair block: initial state, sink, traps,
/// full state and the global fulfillment counters. `pair_entry(i, j)` is
/// the state the initial state branches to when it reads a plain `i` and
/// guesses that `j` will be fulfilled often afterwards.
fn add_core(b: &mut AutomatonBuilder, lay: &Layout, pair_entry: &dyn Fn(u32, u32) -> StateId) {
    let agents = lay.agents();

    b.mark_accepting(Layout::SINK);
    for a in 1..=agents {
        b.add_edge(Layout::SINK, Symbol::overlined(a), Layout::SINK);
    }

    for i in 1..=agents {
        let t = lay.trap(i);
        b.mark_accepting(t);
        b.set_default(t, t);
        b.forbid(t, Symbol::overlined(i));
    }

    let full = lay.full();
    b.set_default(full, full);
    for i in 1..=agents {
        // Staying put must stay possible once the symbol has exceptions.
        b.add_edge(full, Symbol::plain(i), full);
        b.add_edge(full, Symbol::plain(i), lay.trap(i));
    }

    for j in 1..=agents {
        let plain = Symbol::plain(j);
        let bar = Symbol::overlined(j);
        for c in 0..agents {
            let clear = lay.counter(j, false, c);
            let set = lay.counter(j, true, c);
            b.set_default(clear, clear);
            b.add_edge(clear, plain, set);
            b.set_default(set, set);
            let next = if c + 1 == agents { full } else { lay.counter(j, false, c + 1) };
            b.add_edge(set, bar, next);
        }
    }

    // The initial state loops on everything and can also: hand the rest of
    // the word to the sink, start (or restart) any global counter with the
    // pending bit reflecting the symbol just read, or treat a plain symbol
    // as the never-settled promise and enter a per-pair module.
    for sym in alphabet(lay.k()) {
        b.add_edge(Layout::INITIAL, sym, Layout::INITIAL);
        b.add_edge(Layout::INITIAL, sym, Layout::SINK);
        for j in 1..=agents {
            let pending = sym == Symbol::plain(j);
            b.add_edge(Layout::INITIAL, sym, lay.counter(j, pending, 0));
        }
        if sym.is_plain() {
            for j in 1..=agents {
                b.add_edge(Layout::INITIAL, sym, pair_entry(sym.agent(), j));
            }
        }
    }
}

/// Builds the Buchi automaton for parameter `k`.
///
/// It has exactly [`Layout::nbw_states`]`= 20k^2 + 2k + 3` states, with
/// ids assigned by [`Layout`].
pub fn build_nbw(k: u32) -> Result<OmegaAutomaton, BuildError> {
    let lay = checked_layout(k, nbw_state_count(k))?;
    let agents = lay.agents();
    let mut b =
        AutomatonBuilder::new(AcceptanceKind::Buchi, k, lay.nbw_states() as u32);

    add_core(&mut b, &lay, &|i, j| lay.watch(i, j, WatchPhase::Waiting));

    for i in 1..=agents {
        let bar_i = Symbol::overlined(i);
        for j in 1..=agents {
            let waiting = lay.watch(i, j, WatchPhase::Waiting);
            let pending = lay.watch(i, j, WatchPhase::Pending);
            let fulfilled = lay.watch(i, j, WatchPhase::Fulfilled);

            b.set_default(waiting, waiting);
            b.forbid(waiting, bar_i);
            b.add_edge(waiting, Symbol::plain(j), pending);

            b.set_default(pending, pending);
            b.forbid(pending, bar_i);
            if j != i {
                b.add_edge(pending, Symbol::overlined(j), fulfilled);
            }

            // After a fulfillment the pending bit is clear again, so on
            // anything but a fresh plain `j` the loop behaves like waiting.
            b.set_default(fulfilled, waiting);
            b.forbid(fulfilled, bar_i);
            b.add_edge(fulfilled, Symbol::plain(j), pending);
            b.mark_accepting(fulfilled);
        }
    }

    Ok(b.build())
}

/// Builds the co-Buchi automaton for parameter `k`, already in normal
/// form.
///
/// It has exactly [`Layout::ncw_states`]`= 16k^3 + 8k^2 + 2k + 3` states,
/// with ids assigned by [`Layout`].
pub fn build_ncw(k: u32) -> Result<OmegaAutomaton, BuildError> {
    let lay = checked_layout(k, ncw_state_count(k))?;
    let agents = lay.agents();
    let mut b =
        AutomatonBuilder::new(AcceptanceKind::CoBuchi, k, lay.ncw_states() as u32);

    add_core(&mut b, &lay, &|i, j| lay.post_counter(i, j, false, 0));

    for i in 1..=agents {
        let bar_i = Symbol::overlined(i);
        for j in 1..=agents {
            let plain_j = Symbol::plain(j);
            let bar_j = Symbol::overlined(j);
            for c in 0..agents {
                let clear = lay.post_counter(i, j, false, c);
                let set = lay.post_counter(i, j, true, c);
                b.set_default(clear, clear);
                b.forbid(clear, bar_i);
                b.add_edge(clear, plain_j, set);
                b.set_default(set, set);
                b.forbid(set, bar_i);
                if j != i {
                    let next = if c + 1 == agents {
                        lay.trap(i)
                    } else {
                        lay.post_counter(i, j, false, c + 1)
                    };
                    b.add_edge(set, bar_j, next);
                }
            }
        }
    }

    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_k_zero() {
        assert_eq!(build_nbw(0).unwrap_err(), BuildError::InvalidK);
        assert_eq!(build_ncw(0).unwrap_err(), BuildError::InvalidK);
    }

    #[test]
    fn rejects_oversized_k() {
        let err = build_ncw(20_000).unwrap_err();
        assert!(matches!(err, BuildError::TooLarge { k: 20_000, .. }));
    }

    #[test]
    fn state_counts_match_the_formulas() {
        for k in [1u32, 2, 3, 5] {
            let lay = Layout::new(k);
            assert_eq!(build_nbw(k).unwrap().num_states() as u64, lay.nbw_states());
            assert_eq!(build_ncw(k).unwrap().num_states() as u64, lay.ncw_states());
        }
    }

    #[test]
    fn ncw_is_normal_and_nbw_is_buchi() {
        for k in [1u32, 2, 3] {
            let ncw = build_ncw(k).unwrap();
            assert_eq!(ncw.kind(), AcceptanceKind::CoBuchi);
            assert!(ncw.is_normal_form());
            let nbw = build_nbw(k).unwrap();
            assert_eq!(nbw.kind(), AcceptanceKind::Buchi);
        }
    }

    #[test]
    fn accepting_sets_are_as_designed() {
        let k = 2;
        let lay = Layout::new(k);
        let ncw = build_ncw(k).unwrap();
        for q in 0..ncw.num_states() {
            let expect = q == Layout::SINK || (1..=lay.agents()).any(|i| lay.trap(i) == q);
            assert_eq!(ncw.is_accepting(q), expect, "co-Buchi state {q}");
        }
        let nbw = build_nbw(k).unwrap();
        let mut expected: Vec<StateId> = vec![Layout::SINK];
        expected.extend((1..=lay.agents()).map(|i| lay.trap(i)));
        for i in 1..=lay.agents() {
            for j in 1..=lay.agents() {
                expected.push(lay.watch(i, j, WatchPhase::Fulfilled));
            }
        }
        for q in 0..nbw.num_states() {
            assert_eq!(nbw.is_accepting(q), expected.contains(&q), "Buchi state {q}");
        }
    }
}
