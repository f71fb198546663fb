//! Cross-agent collision scan over probe block states.
//!
//! Block states of probes with different huge agents must be distinct: if
//! probes `(i, m)` and `(j, l)` with `i != j` pass through the same state
//! at block boundaries `s` and `t`, splicing the first word's prefix onto
//! the second word's tail yields a word with an accepting run (the glued
//! run is a suffix of an accepting run) whose plain symbols `i`, `m`, `l`
//! are all answered forever by the `v_j` part of the tail — so no symbol
//! keeps a hanging promise and the word is outside the language.

use std::collections::HashMap;

use omega_core::StateId;

use crate::probe::RunProbe;

/// A state shared by probes of two different huge agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Collision {
    /// `(i, m, s)`: huge agent, small agent, block index of the first sighting.
    pub first: (u32, u32, u64),
    /// `(j, l, t)`: the probe of a different huge agent hitting the same state.
    pub second: (u32, u32, u64),
    pub state: StateId,
}

/// Scans all stored block states and returns the first collision between
/// probes of different huge agents, if any, along with the number of
/// distinct states sighted across all probes.
///
/// Probes of the same huge agent may share states freely (their words share
/// the `v_i` spine), so only cross-agent sightings count. The scan is
/// deterministic: probes are visited in the given order and each state
/// remembers its sightings, so the reported collision is the first one in
/// probe order.
pub fn scan_collisions(probes: &[RunProbe]) -> (Option<Collision>, u64) {
    let mut seen: HashMap<StateId, Vec<(u32, u32, u64)>> = HashMap::new();

    for p in probes {
        for (l, &q) in p.block_states.iter().enumerate() {
            let entry = seen.entry(q).or_default();
            if let Some(&prev) = entry.iter().find(|(pi, _, _)| *pi != p.i) {
                return (
                    Some(Collision {
                        first: prev,
                        second: (p.i, p.j, l as u64),
                        state: q,
                    }),
                    seen.len() as u64,
                );
            }
            entry.push((p.i, p.j, l as u64));
        }
    }

    (None, seen.len() as u64)
}
