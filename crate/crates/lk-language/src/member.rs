//! Automaton-free membership test, straight from the two defining clauses:
//! a word belongs to the language when its interpretation either contains a
//! `0` alongside some agent fulfilled at least `2k` times, or ends in kept
//! promises only.

use omega_core::{LassoWord, RleWord, Segment};

use crate::error::LkError;
use crate::interp::interpret;

pub fn is_member(w: &LassoWord, k: u32) -> Result<bool, LkError> {
    let h = interpret(w, k)?;
    if h.cycle_all_sharp() {
        return Ok(true);
    }
    if !h.has_zero() {
        return Ok(false);
    }
    let enough = (1..=2 * k).any(|s| {
        // A fulfillment in the cycle recurs forever, which clears any
        // finite threshold; otherwise count the settled prefix.
        h.cycle_fulfills(s) || h.prefix_fulfillments(s) >= 2 * k as u64
    });
    Ok(enough)
}

/// Runs one pass over `segs`, updating pending promises and crediting one
/// fulfillment per overline segment that meets a pending promise. Repeats
/// inside a segment never matter: a repeated plain only renews a promise
/// that is already pending, and only the first overline of a run can
/// fulfill one.
fn feed(segs: &[Segment], pending: &mut [bool], counts: &mut [u64]) {
    for seg in segs {
        let s = seg.symbol.agent() as usize;
        if seg.symbol.is_plain() {
            pending[s] = true;
        } else if pending[s] {
            pending[s] = false;
            counts[s] += 1;
        }
    }
}

/// The same decision as [`is_member`], computed directly on a
/// run-length-encoded word. This stays cheap when segment counts are
/// astronomical, which is exactly when expanding the word is impossible.
///
/// Per-agent fulfillment gains settle after one cycle lap (the pending
/// status of every agent mentioned in the cycle depends only on its last
/// occurrence there), so the total is: prefix gains, plus one settling lap,
/// plus a steady per-lap gain that is either zero or repeats forever.
pub fn is_member_rle(w: &RleWord, k: u32) -> Result<bool, LkError> {
    let agents = 2 * k as usize;
    if let Some(bad) = w
        .prefix()
        .iter()
        .chain(w.cycle().iter())
        .find(|seg| !seg.symbol.fits_alphabet(k))
    {
        return Err(LkError::SymbolOutOfRange {
            symbol: bad.symbol.to_string(),
            agents: 2 * k,
        });
    }

    // Kept-promises-only tail: once the finitely many pending promises
    // settle, every later letter reads as a kept promise.
    if w.cycle().iter().all(|seg| seg.symbol.is_overlined()) {
        return Ok(true);
    }

    let mut bar_in_cycle = vec![false; agents + 1];
    let mut plain_in_cycle = vec![false; agents + 1];
    for seg in w.cycle() {
        let s = seg.symbol.agent() as usize;
        if seg.symbol.is_overlined() {
            bar_in_cycle[s] = true;
        } else {
            plain_in_cycle[s] = true;
        }
    }
    // `open[s]`: the prefix ends with a promise of `s` still unanswered
    // inside the prefix itself.
    let mut open = vec![false; agents + 1];
    for seg in w.prefix() {
        open[seg.symbol.agent() as usize] = seg.symbol.is_plain();
    }
    let has_zero = (1..=agents)
        .any(|s| !bar_in_cycle[s] && (plain_in_cycle[s] || open[s]));
    if !has_zero {
        return Ok(false);
    }

    let mut pending = vec![false; agents + 1];
    let mut pre_counts = vec![0u64; agents + 1];
    feed(w.prefix(), &mut pending, &mut pre_counts);
    let mut lap1 = vec![0u64; agents + 1];
    feed(w.cycle(), &mut pending, &mut lap1);
    let mut lap2 = vec![0u64; agents + 1];
    feed(w.cycle(), &mut pending, &mut lap2);

    let threshold = 2 * k as u64;
    let enough = (1..=agents)
        .any(|s| lap2[s] >= 1 || pre_counts[s] + lap1[s] >= threshold);
    Ok(enough)
}
