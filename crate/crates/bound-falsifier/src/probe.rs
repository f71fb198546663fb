//! Running the probe family against the automaton under test.
//!
//! Probe `(i, j)` is the word `i (j^N ~1..~2k-without-~i)^w` with `N` equal
//! to the normalized automaton's state count: agent `i` promises once and
//! is never answered, agent `j` is promised and fulfilled once per lap. The
//! word is in the language for every such pair, so the automaton must
//! accept it, and the canonical earliest-accepting run is sampled at the
//! block boundaries — the position right after each `j^N` block, the one
//! run state per lap everything downstream pivots on.

use omega_core::{
    analyze_shortest_run, EngineLimits, OmegaAutomaton, StateId,
};
use lk_language::build_w_rle;

/// Block-boundary samples of the canonical run of one probe.
#[derive(Debug, Clone)]
pub struct RunProbe {
    /// The promising agent (upper half, `k < i <= 2k`).
    pub i: u32,
    /// The repeated agent (lower half, `1 <= j <= k`).
    pub j: u32,
    /// Earliest position at which an accepting run can sit inside the
    /// accepting set.
    pub t_star: u64,
    /// First block index whose boundary state is accepting: the run state
    /// after block `acc` is in the accepting set, every earlier one is not.
    pub acc: u64,
    /// Boundary states for block indices `0..=min(acc, cap)`; pairwise
    /// distinct (checked), and exactly the states certified for counting.
    pub block_states: Vec<StateId>,
}

impl RunProbe {
    /// Whether `block_states` covers every index up to `acc`.
    pub fn complete(&self) -> bool {
        self.block_states.len() as u64 == self.acc + 1
    }
}

/// One probe either yields run samples or a rejection (which is already a
/// counterexample, since every probe word is in the language).
#[derive(Debug, Clone)]
pub enum ProbeOutcome {
    Accepted(RunProbe),
    Rejected,
}

/// The 1-based letter position just after the `l`-th `j^N` block (0-based
/// `l`) of a probe word whose automaton has `n_big` states and whose cycle
/// has `lap` letters.
pub fn block_position(n_big: u64, lap: u64, l: u64) -> u64 {
    1 + l * lap + n_big
}

/// Runs one probe against the normalized automaton. `cap` bounds how many
/// block states are recorded (indices beyond `cap` cannot influence any
/// later stage). Errors are diagnostics for an inconclusive verdict, not
/// counterexamples.
pub fn probe_one(
    a: &OmegaAutomaton,
    k: u32,
    i: u32,
    j: u32,
    cap: u64,
    limits: &EngineLimits,
) -> Result<ProbeOutcome, String> {
    let n_big = a.num_states() as u64;
    let w = build_w_rle(i, j, n_big, k)
        .map_err(|e| format!("probe ({i},{j}): cannot build probe word: {e}"))?;
    let lap = w.cycle_len();
    let analysis = analyze_shortest_run(a, &w, limits)
        .map_err(|e| format!("probe ({i},{j}): engine failed: {e}"))?;
    let Some(analysis) = analysis else {
        return Ok(ProbeOutcome::Rejected);
    };

    let t_star = analysis.t_star();
    // First l with block_position(l) >= t_star: the canonical run is inside
    // the accepting set exactly from t_star on.
    let acc = if t_star <= 1 + n_big {
        0
    } else {
        (t_star - 1 - n_big).div_ceil(lap)
    };

    let hi = acc.min(cap);
    let mut block_states = Vec::with_capacity(hi as usize + 1);
    for l in 0..=hi {
        let q = analysis.state_at_boundary(l, 1).ok_or_else(|| {
            format!(
                "probe ({i},{j}): block {l} is beyond the sampled laps and \
                 no lap loop was detected"
            )
        })?;
        // Cross-check the acc computation against the states themselves.
        let expect_alpha = l >= acc;
        if a.is_accepting(q) != expect_alpha {
            return Err(format!(
                "probe ({i},{j}): block {l} state {q} contradicts the \
                 accepting-from-{acc} shape of the canonical run"
            ));
        }
        block_states.push(q);
    }

    // The block states up to `acc` must be pairwise distinct: a repeat
    // before the accepting set would splice out to a run entering it
    // earlier, contradicting minimality of t_star. A violation here is an
    // internal defect of the run engine, not a property of the automaton.
    let mut sorted = block_states.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(format!(
            "probe ({i},{j}): pre-accepting block states repeat, which \
             contradicts minimality of the canonical run"
        ));
    }

    Ok(ProbeOutcome::Accepted(RunProbe { i, j, t_star, acc, block_states }))
}

/// All probe pairs in scope: every promising (upper-half) agent against
/// every repeated (lower-half) agent.
pub fn probe_pairs(k: u32) -> Vec<(u32, u32)> {
    let mut pairs = Vec::with_capacity((k * k) as usize);
    for i in k + 1..=2 * k {
        for j in 1..=k {
            pairs.push((i, j));
        }
    }
    pairs
}
