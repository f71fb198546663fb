//! Turning one huge agent's probe data into a painted matrix, or into a
//! direct state-count witness when the matrix is unnecessary.
//!
//! For huge agent `i` the `k` probes `(i, 1), ..., (i, k)` each contribute
//! their block states. Three outcomes, checked in order:
//!
//! 1. **Long accepting prefix.** Some probe stays non-accepting through at
//!    least `n - 1` blocks. Its stored block states are pairwise distinct,
//!    so that probe alone certifies `n` states for agent `i`.
//! 2. **Large state union.** The union of block states over the `k` probes
//!    already has at least `n` elements.
//! 3. **Matrix.** Otherwise every probe turns accepting before block
//!    `n - 1` and the union is small: paint a `k x n` matrix whose cell
//!    `(j, c)` holds the state after block `c - 1` of probe `(i, j)` — for
//!    `c` beyond that probe's accepting block, the column is a ghost and
//!    borrows the color of the column `hops * k` places earlier, the
//!    nearest real column in the same residue class mod `k`. A good path
//!    through this matrix then assembles a word outside the language that
//!    the automaton nevertheless accepts.
//!
//! Colors are remapped densely so the palette is exactly the set of
//! distinct states used, and the painting is validated before use.

use std::collections::BTreeMap;

use matrix_path::{validate_painting, PaintedMatrix};
use omega_core::StateId;

use crate::probe::RunProbe;

/// Number of matrix columns for alphabet size `k`: the integer part of
/// `k^(4/3) / 4`, computed exactly via the integer cube root of `k^4`.
pub fn matrix_cols(k: u32) -> u64 {
    let target = (k as u128).pow(4);
    // Integer cube root by binary search: largest r with r^3 <= target.
    let mut lo: u128 = 0;
    let mut hi: u128 = 1 << 43; // (2^43)^3 > (2^32)^4 / anything we need
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if mid.pow(3) <= target {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    (lo / 4) as u64
}

/// What the probes of one huge agent yield.
#[derive(Debug)]
pub enum MatrixOutcome {
    /// Probe `(i, j)` stayed non-accepting long enough that its block
    /// states alone certify `measured` states.
    LongAcc { j: u32, measured: u64 },
    /// The union of block states across the agent's probes already has
    /// `measured` elements.
    LargeQi { measured: u64 },
    /// Neither shortcut applies: the full painted matrix.
    Matrix(StateMatrix),
}

/// A painted matrix together with the probe data needed to turn a good
/// path through it back into a word.
#[derive(Debug)]
pub struct StateMatrix {
    pub matrix: PaintedMatrix,
    /// `accs[j - 1]` = accepting block index of probe `(i, j)`.
    pub accs: Vec<u64>,
    /// `palette_states[c]` = the automaton state painted as color `c`.
    pub palette_states: Vec<StateId>,
}

/// Builds the matrix (or a shortcut witness) for one huge agent from its
/// `k` probes, which must be passed sorted by small agent `j = 1..=k`.
pub fn build_state_matrix(
    probes: &[&RunProbe],
    k: u32,
    n_cols: u64,
) -> Result<MatrixOutcome, String> {
    if probes.len() != k as usize {
        return Err(format!(
            "agent matrix needs {k} probes, got {}",
            probes.len()
        ));
    }
    let i = probes[0].i;
    for (idx, p) in probes.iter().enumerate() {
        if p.i != i || p.j != idx as u32 + 1 {
            return Err(format!(
                "agent matrix for {i}: probe {idx} is ({},{}), want ({i},{})",
                p.i,
                p.j,
                idx + 1
            ));
        }
    }

    // Shortcut 1: one probe's accepting block is at least n - 1, so its
    // block states 0..=acc (all distinct) number at least n. Use the
    // longest such probe, but count only the states actually stored and
    // checked: the storage cap is at least n - 1, so the count still
    // reaches n.
    if let Some(p) = probes
        .iter()
        .filter(|p| p.acc >= n_cols.saturating_sub(1))
        .max_by_key(|p| p.acc)
    {
        return Ok(MatrixOutcome::LongAcc {
            j: p.j,
            measured: p.block_states.len() as u64,
        });
    }

    // Shortcut 2: the union over probes is already large. Every probe is
    // complete here (acc < n - 1 <= cap), so the union is exact.
    let mut union: BTreeMap<StateId, u32> = BTreeMap::new();
    for p in probes {
        if !p.complete() {
            return Err(format!(
                "agent matrix for {i}: probe ({},{}) has truncated block states",
                p.i, p.j
            ));
        }
        for &q in &p.block_states {
            union.entry(q).or_insert(p.j);
        }
    }
    if union.len() as u64 >= n_cols {
        return Ok(MatrixOutcome::LargeQi {
            measured: union.len() as u64,
        });
    }

    // Paint the k x n matrix. Row j, column c (1-based) holds the state
    // after block c - 1; columns past acc are ghosts hosted by the nearest
    // real column a positive multiple of k to the left. Real cells of a
    // row are pairwise distinct and pre-accepting, ghosts repeat a color
    // at distance >= k, so the painting obeys min distance k.
    let n = n_cols;
    let mut states: Vec<StateId> = Vec::with_capacity((k as u64 * n) as usize);
    let mut accs = Vec::with_capacity(k as usize);
    for p in probes {
        let acc = p.acc;
        if acc == 0 {
            // The early-accept stage fires on acc < 2k - 1 long before the
            // matrix stage, so a zero accepting block cannot reach here.
            return Err(format!(
                "agent matrix for {i}: probe ({},{}) accepts at block 0",
                p.i, p.j
            ));
        }
        accs.push(acc);
        for c in 1..=n {
            let src = if c <= acc {
                c
            } else {
                let hops = (c - acc).div_ceil(k as u64);
                c - hops * k as u64
            };
            if src == 0 || src > acc {
                return Err(format!(
                    "agent matrix for {i}: ghost column {c} of probe ({},{}) \
                     resolves to {src}, outside 1..={acc}",
                    p.i, p.j
                ));
            }
            states.push(p.block_states[src as usize - 1]);
        }
    }

    // Dense color remap: palette = distinct states in first-seen order.
    let mut palette_states: Vec<StateId> = Vec::new();
    let mut color_of: BTreeMap<StateId, u32> = BTreeMap::new();
    let colors: Vec<u32> = states
        .iter()
        .map(|&q| {
            *color_of.entry(q).or_insert_with(|| {
                let c = palette_states.len() as u32;
                palette_states.push(q);
                c
            })
        })
        .collect();

    let matrix = PaintedMatrix::new(k, n as u32, palette_states.len() as u32, k, colors)
        .map_err(|e| format!("agent matrix for {i}: {e}"))?;
    if !validate_painting(&matrix) {
        return Err(format!(
            "agent matrix for {i}: painting violates the color-distance rule"
        ));
    }

    Ok(MatrixOutcome::Matrix(StateMatrix {
        matrix,
        accs,
        palette_states,
    }))
}
