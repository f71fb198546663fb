//! The end-to-end decision: probe the automaton, hunt for a disagreement
//! with the language, and if none survives verification, certify that the
//! automaton is large enough.
//!
//! Stages, in fixed order:
//!
//! 1. run every probe `(i, j)` (promising agent against repeated agent)
//!    and sample its canonical earliest-accepting run at block boundaries
//!    — a rejected probe is immediately a counterexample;
//! 2. reject runs that turn accepting before `2k - 1` fulfillments (the
//!    pumped word);
//! 3. reject block-state collisions between different promising agents
//!    (the spliced word);
//! 4. per promising agent, certify at least `n = floor(k^(4/3) / 4)`
//!    distinct states — via one long pre-accepting run or a large state
//!    union — or, failing both, paint the state matrix, find a good path
//!    through it, and emit the path word.
//!
//! Every candidate passes through one verifier that recomputes both sides
//! of the disagreement from scratch; nothing upstream is trusted. When all
//! agents certify, their per-agent state sets are pairwise disjoint (stage
//! 3 checked exactly that), so the automaton has at least `k * n`
//! normalized states — and at least half that before normalization.

use rayon::prelude::*;
use thiserror::Error;

use omega_core::{
    accepts_rle_with, analyze_shortest_run, normalize, witness_run, AcceptanceKind,
    EngineLimits, OmegaAutomaton, RleWord,
};
use lk_language::{build_w_rle, is_member_rle};
use matrix_path::find_good_path;

use crate::collide::scan_collisions;
use crate::early::check_early_accept;
use crate::matrix::{build_state_matrix, matrix_cols, MatrixOutcome, StateMatrix};
use crate::probe::{probe_one, probe_pairs, ProbeOutcome, RunProbe};
use crate::verdict::{
    AgentWitness, CheckOrigin, Counterexample, Direction, Verdict, Witness, WitnessKind,
};
use crate::word::{path_to_word, plan_path, spliced_word};

/// Budgets for a falsification run.
#[derive(Debug, Clone)]
pub struct FalsifyConfig {
    /// Limits handed to the compressed run engine.
    pub limits: EngineLimits,
    /// Longest candidate (prefix plus cycle, in letters) that is expanded
    /// into an explicit lasso for the product-based cross-check.
    pub expand_cap: u64,
}

impl Default for FalsifyConfig {
    fn default() -> FalsifyConfig {
        FalsifyConfig {
            limits: EngineLimits::default(),
            expand_cap: 1 << 16,
        }
    }
}

/// Product nodes (letters times states) above which the explicit
/// cross-check is skipped even when the word itself fits `expand_cap`.
const EXPLICIT_PRODUCT_CAP: u64 = 1 << 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FalsifyError {
    #[error("the falsifier analyzes co-Buchi automata")]
    WrongKind,
    #[error("k must be at least 1")]
    BadK,
    #[error("the automaton's alphabet is sized for k={got}, not k={k}")]
    AlphabetMismatch { got: u32, k: u32 },
}

/// Runs the full pipeline with default budgets.
pub fn falsify(a: &OmegaAutomaton, k: u32) -> Result<Verdict, FalsifyError> {
    falsify_with(a, k, &FalsifyConfig::default())
}

/// Runs the full pipeline.
///
/// Errors are reserved for ill-posed inputs; everything that can go wrong
/// while analyzing a well-posed automaton lands in
/// [`Verdict::Inconclusive`] instead, so a caller can distinguish "you
/// asked a malformed question" from "no verified answer".
pub fn falsify_with(
    a: &OmegaAutomaton,
    k: u32,
    cfg: &FalsifyConfig,
) -> Result<Verdict, FalsifyError> {
    if a.kind() != AcceptanceKind::CoBuchi {
        return Err(FalsifyError::WrongKind);
    }
    if k == 0 {
        return Err(FalsifyError::BadK);
    }
    if a.alphabet_k() != k {
        return Err(FalsifyError::AlphabetMismatch { got: a.alphabet_k(), k });
    }

    let normalized = match normalize(a) {
        Ok(n) => n,
        Err(e) => return Ok(inc(format!("normalization failed: {e}"))),
    };
    let na = &normalized.automaton;
    let n_big = na.num_states() as u64;
    let n_cols = matrix_cols(k);
    // How many block states each probe records: enough for the matrix
    // stage and for the early-accept bar, whichever is larger.
    let cap = n_cols.saturating_sub(1).max(2 * k as u64 + 1);

    // Stage 1: canonical runs of all probes. The iteration is parallel
    // but the collected order is the pair order, so verdicts are
    // deterministic.
    let pairs = probe_pairs(k);
    let outcomes: Vec<Result<ProbeOutcome, String>> = pairs
        .par_iter()
        .map(|&(i, j)| probe_one(na, k, i, j, cap, &cfg.limits))
        .collect();

    let mut probes = Vec::with_capacity(outcomes.len());
    for (&(i, j), outcome) in pairs.iter().zip(outcomes) {
        match outcome {
            Err(reason) => return Ok(inc(reason)),
            Ok(ProbeOutcome::Rejected) => {
                // Every probe word is in the language; rejecting one is
                // already a disagreement.
                let word = match build_w_rle(i, j, n_big, k) {
                    Ok(w) => w,
                    Err(e) => return Ok(inc(format!("probe ({i},{j}): {e}"))),
                };
                return Ok(confirm(
                    a,
                    na,
                    k,
                    word,
                    Direction::InLkButRejected,
                    CheckOrigin::ProbeRejected { i, j },
                    cfg,
                ));
            }
            Ok(ProbeOutcome::Accepted(p)) => probes.push(p),
        }
    }

    // Stage 2: no run may settle before 2k - 1 fulfillments.
    for p in &probes {
        if let Some(res) = check_early_accept(na, p, k, &cfg.limits) {
            return Ok(match res {
                Err(reason) => inc(reason),
                Ok((word, origin)) => {
                    confirm(a, na, k, word, Direction::AcceptedButNotInLk, origin, cfg)
                }
            });
        }
    }

    // Stage 3: block states of different promising agents never meet.
    let (collision, _distinct) = scan_collisions(&probes);
    if let Some(c) = collision {
        let word = match spliced_word(c.first, c.second, k, n_big) {
            Ok(w) => w,
            Err(e) => return Ok(inc(format!("splice failed: {e}"))),
        };
        let origin = CheckOrigin::StateCollision {
            first: c.first,
            second: c.second,
            state: c.state,
        };
        return Ok(confirm(a, na, k, word, Direction::AcceptedButNotInLk, origin, cfg));
    }

    // Stage 4: per-agent certification, or the matrix and its path word.
    let mut per_agent = Vec::with_capacity(k as usize);
    for group in probes.chunks(k as usize) {
        let i = group[0].i;
        let refs: Vec<&RunProbe> = group.iter().collect();
        match build_state_matrix(&refs, k, n_cols) {
            Err(reason) => return Ok(inc(reason)),
            Ok(MatrixOutcome::LongAcc { j: _, measured }) => {
                debug_assert!(measured >= n_cols);
                per_agent.push(AgentWitness {
                    agent: i,
                    kind: WitnessKind::LongAccPrefix,
                    measured,
                    threshold: n_cols,
                });
            }
            Ok(MatrixOutcome::LargeQi { measured }) => {
                per_agent.push(AgentWitness {
                    agent: i,
                    kind: WitnessKind::LargeQi,
                    measured,
                    threshold: n_cols,
                });
            }
            Ok(MatrixOutcome::Matrix(sm)) => {
                return Ok(path_word_verdict(a, na, k, i, &sm, cfg));
            }
        }
    }

    let certified_total: u64 = per_agent.iter().map(|w| w.measured).sum();
    let threshold_normalized = k as u64 * n_cols;
    Ok(Verdict::LowerBoundWitness(Witness {
        k,
        normalized_states: n_big,
        per_agent_threshold: n_cols,
        per_agent,
        certified_total,
        threshold_normalized,
        threshold_original: threshold_normalized / 2,
        probes: pairs.len() as u64,
        disjointness_pairs: cross_agent_pairs(k),
    }))
}

/// Turns a fully built state matrix into a verified path-word
/// counterexample, or explains why it could not.
fn path_word_verdict(
    a: &OmegaAutomaton,
    na: &OmegaAutomaton,
    k: u32,
    i: u32,
    sm: &StateMatrix,
    cfg: &FalsifyConfig,
) -> Verdict {
    let path = match find_good_path(&sm.matrix) {
        Ok(p) => p,
        Err(e) => {
            return inc(format!(
                "agent {i}: the state matrix admitted no good path ({e}); the \
                 automaton sits below the bound but no counterexample was \
                 assembled"
            ));
        }
    };
    let plan = match plan_path(&path, &sm.accs, k) {
        Ok(p) => p,
        Err(e) => return inc(format!("agent {i}: path plan failed: {e}")),
    };

    // Confirm the in-alpha revisit after the final row's accepting block;
    // it is what lets the path word end on a plain letter forever.
    let rz = *plan.rows.last().expect("plans are nonempty");
    let acc = sm.accs[rz as usize - 1];
    let n_big = na.num_states() as u64;
    let revisit = (|| -> Result<(), String> {
        let w = build_w_rle(i, rz, n_big, k).map_err(|e| e.to_string())?;
        let analysis = analyze_shortest_run(na, &w, &cfg.limits)
            .map_err(|e| format!("engine failed: {e}"))?
            .ok_or_else(|| "probe flipped to rejection on re-analysis".to_string())?;
        let (x, y) = analysis
            .alpha_repeat_in_segment(acc + 1, 0)
            .map_err(|e| format!("no in-alpha revisit after the final block: {e}"))?;
        if x >= y {
            return Err(format!("degenerate revisit offsets ({x},{y})"));
        }
        Ok(())
    })();
    if let Err(e) = revisit {
        return inc(format!("agent {i} path word: {e}"));
    }

    let word = match path_to_word(&plan, i, k, n_big) {
        Ok(w) => w,
        Err(e) => return inc(format!("agent {i}: path word failed: {e}")),
    };
    let origin = CheckOrigin::PathWord { i, rows: plan.rows.clone() };
    confirm(a, na, k, word, Direction::AcceptedButNotInLk, origin, cfg)
}

/// Central verification: both sides of the claimed disagreement are
/// recomputed from scratch — the membership oracle on the word, the
/// compressed engine on the input and on the normalized automaton (which
/// must agree), and, when small enough, the explicit product with a run
/// witness. Any mismatch downgrades to inconclusive; a counterexample is
/// only ever reported verified.
fn confirm(
    input: &OmegaAutomaton,
    na: &OmegaAutomaton,
    k: u32,
    word: RleWord,
    direction: Direction,
    origin: CheckOrigin,
    cfg: &FalsifyConfig,
) -> Verdict {
    let member = match is_member_rle(&word, k) {
        Ok(b) => b,
        Err(e) => return inc(format!("membership oracle failed on the candidate: {e}")),
    };
    let accepted = match accepts_rle_with(input, &word, &cfg.limits) {
        Ok(b) => b,
        Err(e) => return inc(format!("acceptance check failed on the candidate: {e}")),
    };
    let accepted_norm = match accepts_rle_with(na, &word, &cfg.limits) {
        Ok(b) => b,
        Err(e) => return inc(format!("normalized acceptance check failed: {e}")),
    };
    if accepted != accepted_norm {
        return inc(format!(
            "normalization changed acceptance of the candidate (input \
             {accepted}, normalized {accepted_norm}); this is an internal \
             defect"
        ));
    }
    let want = match direction {
        Direction::AcceptedButNotInLk => (true, false),
        Direction::InLkButRejected => (false, true),
    };
    if (accepted, member) != want {
        return inc(format!(
            "candidate from `{origin}` did not re-verify: accepted={accepted}, \
             member={member}, claimed {direction}"
        ));
    }

    // Explicit cross-check on small candidates: expand, re-run the
    // product construction, and keep the witness run as evidence.
    let total = word.prefix_len() + word.cycle_len();
    let mut lasso = None;
    let mut run = None;
    if total <= cfg.expand_cap
        && total.saturating_mul(input.num_states() as u64) <= EXPLICIT_PRODUCT_CAP
    {
        let explicit = match word.expand(cfg.expand_cap) {
            Ok(l) => l,
            Err(e) => return inc(format!("expansion failed: {e}")),
        };
        match witness_run(input, &explicit) {
            Ok(r) => {
                if r.is_some() != accepted {
                    return inc(format!(
                        "explicit product disagrees with the compressed engine \
                         on the candidate (explicit accepted={}, compressed \
                         accepted={accepted})",
                        r.is_some()
                    ));
                }
                run = r;
            }
            Err(e) => return inc(format!("explicit product failed: {e}")),
        }
        lasso = Some(explicit);
    }

    Verdict::CounterexampleVerified(Box::new(Counterexample {
        direction,
        word,
        lasso,
        run,
        origin,
    }))
}

fn inc(reason: impl Into<String>) -> Verdict {
    Verdict::Inconclusive { reason: reason.into() }
}

/// Probe pairs with different promising agents: `k` groups of `k` probes
/// give `k^2 choose 2` pairs minus the `k * (k choose 2)` same-agent ones.
fn cross_agent_pairs(k: u32) -> u64 {
    let k = k as u64;
    k * k * k * (k - 1) / 2
}
