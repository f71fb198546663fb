//! State id layout shared by the two generated automaton families.
//!
//! Both automata are assembled from the same core plus one family-specific
//! block, and both use a fixed, dense id scheme so that states can be
//! reconstructed from an id (and vice versa) without a lookup table:
//!
//! | ids                      | component                                    |
//! |--------------------------|----------------------------------------------|
//! | `0`                      | initial state                                |
//! | `1`                      | all-overlines sink                           |
//! | `2 ..= 2k+1`             | traps: `trap(i)` loops on everything but `~i`|
//! | `2k+2`                   | full state: counting done, waiting to commit |
//! | `2k+3 ..`                | global fulfillment counters, `8k^2` states   |
//! | `2k+3+8k^2 ..`           | per-pair block (watch loops or post counters)|
//!
//! The per-pair block is indexed by `(i, j)` where `i` is the agent whose
//! promise is claimed to stay open forever and `j` is the agent claimed to
//! be fulfilled often. The Buchi family spends 3 states per pair on a watch
//! loop; the co-Buchi family spends `4k` states per pair on a bounded
//! counter, which is where its cubic size comes from.

use omega_core::StateId;

/// Phases of one Buchi watch loop for a pair `(i, j)`: detect that `j` is
/// fulfilled over and over while `~i` never shows up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WatchPhase {
    /// No open promise for `j`; waiting to read a plain `j`.
    Waiting = 0,
    /// Read a plain `j`; waiting for the matching `~j`.
    Pending = 1,
    /// Just read a `~j` that settled an open promise. Accepting.
    Fulfilled = 2,
}

/// Computes state ids for the generated automata with alphabet parameter
/// `k` (agents `1 ..= 2k`).
#[derive(Debug, Clone, Copy)]
pub struct Layout {
    k: u32,
}

impl Layout {
    /// The initial state. Loops on everything while nondeterministically
    /// spawning runs into each component.
    pub const INITIAL: StateId = 0;

    /// Accepting sink that survives exactly the all-overlined suffixes.
    pub const SINK: StateId = 1;

    pub fn new(k: u32) -> Layout {
        assert!(k >= 1, "the alphabet parameter must be at least 1");
        Layout { k }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of agents, `2k`.
    pub fn agents(&self) -> u32 {
        2 * self.k
    }

    /// Accepting trap for agent `i`: loops on every symbol except `~i`.
    /// A run that reaches it survives exactly when the promise opened by
    /// the plain `i` it was entered on is never settled.
    pub fn trap(&self, i: u32) -> StateId {
        debug_assert!(1 <= i && i <= self.agents());
        1 + i
    }

    /// State reached once a global counter has seen `2k` fulfillments.
    /// Waits for an arbitrary later plain symbol to commit to its trap.
    pub fn full(&self) -> StateId {
        self.agents() + 2
    }

    /// Global fulfillment counter for agent `j`: `count` fulfillments seen
    /// so far (`0 ..= 2k-1`), `pending` telling whether a plain `j` is
    /// currently unanswered. Counts from the start of the word.
    pub fn counter(&self, j: u32, pending: bool, count: u32) -> StateId {
        debug_assert!(1 <= j && j <= self.agents());
        debug_assert!(count < self.agents());
        self.counter_base() + (j - 1) * (2 * self.agents()) + 2 * count + pending as u32
    }

    fn counter_base(&self) -> StateId {
        self.agents() + 3
    }

    /// First id past the shared core (initial, sink, traps, full state and
    /// the global counters): the per-pair block starts here.
    fn pair_base(&self) -> StateId {
        self.counter_base() + self.agents() * 2 * self.agents()
    }

    fn pair_index(&self, i: u32, j: u32) -> u32 {
        debug_assert!(1 <= i && i <= self.agents());
        debug_assert!(1 <= j && j <= self.agents());
        (i - 1) * self.agents() + (j - 1)
    }

    /// Buchi watch-loop state for the pair `(i, j)`.
    pub fn watch(&self, i: u32, j: u32, phase: WatchPhase) -> StateId {
        self.pair_base() + self.pair_index(i, j) * 3 + phase as u32
    }

    /// Co-Buchi post counter for the pair `(i, j)`: like [`Layout::counter`]
    /// but entered on the plain `i` it guards, counting only fulfillments
    /// read after that point, and forbidding `~i` throughout.
    pub fn post_counter(&self, i: u32, j: u32, pending: bool, count: u32) -> StateId {
        debug_assert!(count < self.agents());
        self.pair_base() + self.pair_index(i, j) * (2 * self.agents()) + 2 * count + pending as u32
    }

    /// Exact size of the Buchi automaton; see [`nbw_state_count`].
    pub fn nbw_states(&self) -> u64 {
        nbw_state_count(self.k)
    }

    /// Exact size of the co-Buchi automaton; see [`ncw_state_count`].
    pub fn ncw_states(&self) -> u64 {
        ncw_state_count(self.k)
    }
}

/// Exact size of the generated Buchi automaton: `20k^2 + 2k + 3`.
///
/// Core: initial, sink, `2k` traps and the full state, plus `2k` global
/// counters of `4k` states each; per-pair block: `(2k)^2` watch loops of
/// 3 states each.
pub fn nbw_state_count(k: u32) -> u64 {
    let k = k as u64;
    20 * k * k + 2 * k + 3
}

/// Exact size of the generated co-Buchi automaton: `16k^3 + 8k^2 + 2k + 3`.
///
/// Same core as the Buchi automaton; the per-pair block holds `(2k)^2`
/// post counters of `4k` states each.
pub fn ncw_state_count(k: u32) -> u64 {
    let k = k as u64;
    16 * k * k * k + 8 * k * k + 2 * k + 3
}
