//! The early-accept check: no accepting state may be reachable before some
//! agent has been fulfilled `2k - 1` times.
//!
//! On probe `(i, j)` exactly one agent gathers fulfillments — `j`, once per
//! lap — so after `l` complete laps exactly `l` promises have been kept. If
//! the canonical run turns accepting after block `acc` with `acc < 2k - 1`,
//! the automaton is wrong: keep `acc + 1` complete laps and repeat the
//! plain `j` forever. The run follows the probe into the next `j` block,
//! which lies entirely inside the accepting set and is longer than it, so
//! the run revisits a state there — a loop of plain-`j` moves inside the
//! accepting set, making the cut word accepted. But it fulfills `j` only
//! `acc + 1 < 2k` times while `i`'s promise hangs, so it is not in the
//! language.

use omega_core::{analyze_shortest_run, EngineLimits, OmegaAutomaton, RleWord};
use lk_language::build_w_rle;

use crate::probe::RunProbe;
use crate::verdict::CheckOrigin;
use crate::word::pumped_word;

/// Returns a counterexample candidate when the probe's run turned
/// accepting too early, `None` when the probe passes the check. An `Err`
/// means the pump structure could not be confirmed (inconclusive).
pub fn check_early_accept(
    a: &OmegaAutomaton,
    probe: &RunProbe,
    k: u32,
    limits: &EngineLimits,
) -> Option<Result<(RleWord, CheckOrigin), String>> {
    let needed = 2 * k as u64 - 1;
    if probe.acc >= needed {
        return None;
    }
    Some(build_pump(a, probe, k, limits))
}

fn build_pump(
    a: &OmegaAutomaton,
    probe: &RunProbe,
    k: u32,
    limits: &EngineLimits,
) -> Result<(RleWord, CheckOrigin), String> {
    let (i, j, acc) = (probe.i, probe.j, probe.acc);
    let n_big = a.num_states() as u64;

    // Confirm the in-alpha revisit inside the block after the kept laps:
    // it is what justifies that the pumped word has an accepting run.
    let w = build_w_rle(i, j, n_big, k).map_err(|e| e.to_string())?;
    let analysis = analyze_shortest_run(a, &w, limits)
        .map_err(|e| format!("early accept ({i},{j}): engine failed: {e}"))?
        .ok_or_else(|| {
            format!("early accept ({i},{j}): probe flipped to rejection on re-analysis")
        })?;
    let (x, y) = analysis.alpha_repeat_in_segment(acc + 1, 0).map_err(|e| {
        format!("early accept ({i},{j}): no in-alpha revisit in the pump block: {e}")
    })?;
    if x >= y {
        return Err(format!(
            "early accept ({i},{j}): degenerate revisit offsets ({x},{y})"
        ));
    }

    let word = pumped_word(i, j, acc + 1, k, n_big)?;
    Ok((word, CheckOrigin::EarlyAccept { i, j, acc }))
}
