//! Word surgery: every counterexample candidate is cut out of probe words.
//!
//! Three constructions, all verified downstream against the membership
//! oracle and the run engine rather than trusted:
//!
//! - a *pumped* word keeps a probe's first laps and repeats the plain
//!   letter forever — if the run turned accepting before `2k - 1`
//!   fulfillments, the result is accepted with too few fulfillments to be
//!   in the language;
//! - a *spliced* word glues the prefix of one probe to the tail of another
//!   at a shared run state — with different promising agents on the two
//!   sides, every promise in the glued word is answered infinitely often,
//!   so it is not in the language, yet the glued run accepts;
//! - a *path* word replays a good path through the state matrix: each
//!   jump-free stretch contributes a few laps of one repeated agent, each
//!   jump switches agents at a shared state, and the final row repeats
//!   forever. No agent is repeated often enough to qualify, but the glued
//!   run is accepting.
//!
//! The pumped and path words end on a plain letter repeated forever. The
//! run survives that tail because it has just crossed into the accepting
//! set: following the probe's run through the start of one more block of
//! the plain letter, it must revisit a state inside the accepting set (the
//! block is longer than the set), closing a loop of plain-letter moves.
//! The words therefore keep the probe's letters through that next block
//! start and let the repeated plain absorb the rest.

use matrix_path::{GoodPath, Move};
use omega_core::{RleWord, Segment, Symbol};
use lk_language::{build_v, build_w_rle};

use crate::probe::block_position;

/// `i (j^N v_i)^laps j^w`: the probe word cut after `laps` complete laps,
/// then the repeated agent forever. Not in the language whenever
/// `laps < 2k`: agent `j` is fulfilled exactly `laps` times and the
/// promises of `i` and of the tail `j`s hang forever.
pub fn pumped_word(i: u32, j: u32, laps: u64, k: u32, n_big: u64) -> Result<RleWord, String> {
    let w = build_w_rle(i, j, n_big, k).map_err(|e| e.to_string())?;
    let cut = 1 + laps * w.cycle_len();
    let prefix = w.take_segments(cut);
    Ok(RleWord::new(prefix, vec![Segment::new(Symbol::plain(j), 1)]))
}

/// `w_{i,m}[1..block(s)] . w_{j,l}[block(t)+1 ..]`: the first probe's
/// prefix glued to the second probe's tail.
pub fn spliced_word(
    first: (u32, u32, u64),
    second: (u32, u32, u64),
    k: u32,
    n_big: u64,
) -> Result<RleWord, String> {
    let (i, m, s) = first;
    let (j, l, t) = second;
    let w1 = build_w_rle(i, m, n_big, k).map_err(|e| e.to_string())?;
    let w2 = build_w_rle(j, l, n_big, k).map_err(|e| e.to_string())?;
    let prefix = w1.take_segments(block_position(n_big, w1.cycle_len(), s));
    let tail = w2.suffix(block_position(n_big, w2.cycle_len(), t) + 1);
    if !tail.prefix().is_empty() {
        return Err("probe tails are periodic past the first letter".into());
    }
    Ok(RleWord::new(prefix, tail.cycle().to_vec()))
}

/// A good path reduced to what the word construction needs: the repeated
/// agent of each jump-free stretch and how many extra laps it contributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPlan {
    /// Repeated agent per stretch (the row numbers of the path).
    pub rows: Vec<u32>,
    /// Laps appended per stretch beyond its entry block: stretch 1 of
    /// length `c` contributes `c - 1`, later stretches enter at a shared
    /// state and contribute `length - 1` as well, and the final stretch is
    /// extended until the run's block index reaches `acc` of its row.
    pub reps: Vec<u64>,
}

/// Turns a good path over the state matrix of promising agent `i` into a
/// plan, repairing it around ghost cells first.
///
/// `accs[m - 1]` is `acc(i, m)` for row `m`. Column `c` of the matrix
/// holds the state after block `c - 1`, so cells at columns beyond `acc`
/// are ghosts, colored by the real cell `k` columns to the left (possibly
/// iterated). The path is cut at its first ghost:
///
/// - entered by a right move, the ghost stays as the stretch's final cell
///   (the run state there is the first accepting block state — exactly
///   where the word may stop);
/// - entered by a jump, the jump is redirected to the ghost's host (same
///   color, same row) and extended rightward through real cells.
///
/// The final stretch is then padded so the run ends on the accepting block
/// `acc` of its row.
pub fn plan_path(path: &GoodPath, accs: &[u64], k: u32) -> Result<PathPlan, String> {
    if path.cells.is_empty() {
        return Err("empty path".into());
    }
    let acc_of = |row: u32| -> Result<u64, String> {
        accs.get(row as usize - 1)
            .copied()
            .ok_or_else(|| format!("path visits row {row} outside the matrix"))
    };
    let is_ghost = |&(row, col): &(u32, u32)| -> Result<bool, String> {
        Ok(col as u64 > acc_of(row)?)
    };

    // Cut at the first ghost cell.
    let mut cells: Vec<(u32, u32)> = Vec::new();
    let mut moves: Vec<Move> = Vec::new();
    let mut cut = false;
    for (s, cell) in path.cells.iter().enumerate() {
        if !is_ghost(cell)? {
            if s > 0 {
                moves.push(path.moves[s - 1]);
            }
            cells.push(*cell);
            continue;
        }
        if s == 0 {
            return Err("the path starts on a ghost cell".into());
        }
        match path.moves[s - 1] {
            Move::Right => {
                // Keep the ghost: the run state after its block is the
                // first accepting one.
                moves.push(Move::Right);
                cells.push(*cell);
            }
            Move::Jump => {
                // Redirect to the host and walk right through real cells.
                let (row, col) = *cell;
                let acc = acc_of(row)?;
                let over = col as u64 - acc;
                let hops = over.div_ceil(k as u64);
                let host = col as u64 - hops * k as u64;
                if host < 1 {
                    return Err(format!(
                        "ghost ({row},{col}) has no real host at distance \
                         multiples of {k}"
                    ));
                }
                moves.push(Move::Jump);
                cells.push((row, host as u32));
                for c in host + 1..=acc {
                    moves.push(Move::Right);
                    cells.push((row, c as u32));
                }
            }
        }
        cut = true;
        break;
    }
    debug_assert!(cut || cells.len() == path.cells.len());

    // Stretch decomposition.
    let mut rows: Vec<u32> = Vec::new();
    let mut reps: Vec<u64> = Vec::new();
    let mut start_col = 0u64;
    for (s, &(row, col)) in cells.iter().enumerate() {
        if s == 0 || moves[s - 1] == Move::Jump {
            if s == 0 && col != 1 {
                return Err("the path must start at the left border".into());
            }
            rows.push(row);
            start_col = if s == 0 { 1 } else { col as u64 };
            reps.push(0);
        } else {
            if row != *rows.last().expect("a stretch is open") {
                return Err("a right move changed rows".into());
            }
            *reps.last_mut().expect("a stretch is open") = col as u64 - start_col;
        }
    }

    // Pad the final stretch until the run's block index reaches acc. The
    // stretch entered at block start_col - 1 and each rep advances one
    // block, so the end block is its end column minus one.
    let last_row = *rows.last().expect("nonempty path");
    let last_end = start_col + reps.last().expect("nonempty path");
    let acc = acc_of(last_row)?;
    let target = acc + 1;
    if last_end < target {
        *reps.last_mut().expect("nonempty path") += target - last_end;
    }

    Ok(PathPlan { rows, reps })
}

/// Assembles the word of a plan for promising agent `i`:
/// `i r1^N (v_i r1^N)^a1 (v_i r2^N)^a2 ... (v_i rz^N)^az v_i rz^w` where
/// `rx` are the plan rows, `ax` the rep counts and `v_i` the overlines of
/// every agent but `i`. The closing `v_i` carries the run from the
/// accepting block boundary to the start of the next block, inside which
/// it can loop on the plain tail.
pub fn path_to_word(plan: &PathPlan, i: u32, k: u32, n_big: u64) -> Result<RleWord, String> {
    if plan.rows.is_empty() || plan.rows.len() != plan.reps.len() {
        return Err("malformed path plan".into());
    }
    let v_i = build_v(i, k).map_err(|e| e.to_string())?;
    let mut prefix: Vec<Segment> = Vec::new();
    prefix.push(Segment::new(Symbol::plain(i), 1));
    prefix.push(Segment::new(Symbol::plain(plan.rows[0]), n_big));
    // A zero-rep stretch is legal: its row contributes no laps, and the
    // glue states on both sides compose.
    for (&row, &reps) in plan.rows.iter().zip(plan.reps.iter()) {
        if row as u64 > 2 * k as u64 || row == 0 {
            return Err(format!("row {row} is not an agent"));
        }
        for _ in 0..reps {
            prefix.extend(v_i.iter().map(|&s| Segment::new(s, 1)));
            prefix.push(Segment::new(Symbol::plain(row), n_big));
        }
    }
    prefix.extend(v_i.iter().map(|&s| Segment::new(s, 1)));
    let tail = *plan.rows.last().expect("nonempty plan");
    Ok(RleWord::new(prefix, vec![Segment::new(Symbol::plain(tail), 1)]))
}
