//! The three possible outcomes of a falsification attempt, with enough
//! structure that a caller can re-verify every claim independently.

use std::fmt;

use omega_core::{LassoWord, RleWord, RunDescriptor, StateId};

/// Which side of the disagreement the counterexample sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// The automaton accepts the word, but the word is not in the language.
    AcceptedButNotInLk,
    /// The word is in the language, but the automaton rejects it.
    InLkButRejected,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::AcceptedButNotInLk => f.write_str("accepted but not in the language"),
            Direction::InLkButRejected => f.write_str("in the language but rejected"),
        }
    }
}

/// Which stage of the pipeline produced the counterexample, with the data
/// that stage pivoted on.
#[derive(Debug, Clone)]
pub enum CheckOrigin {
    /// The probe word itself was rejected outright.
    ProbeRejected { i: u32, j: u32 },
    /// The canonical run reached an accepting state after only `acc`
    /// fulfillments, so chopping the word there and repeating the plain
    /// letter forever is accepted with too few fulfillments to qualify.
    EarlyAccept { i: u32, j: u32, acc: u64 },
    /// Two probes with different promising agents met in the same state, so
    /// gluing the first probe's prefix to the second probe's tail is
    /// accepted while no promise is left permanently hanging.
    StateCollision {
        first: (u32, u32, u64),
        second: (u32, u32, u64),
        state: StateId,
    },
    /// A good path through the state matrix of promising agent `i` was
    /// translated into a word with too few fulfillments per agent.
    PathWord { i: u32, rows: Vec<u32> },
}

impl fmt::Display for CheckOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckOrigin::ProbeRejected { i, j } => {
                write!(f, "probe ({i},{j}) rejected")
            }
            CheckOrigin::EarlyAccept { i, j, acc } => {
                write!(f, "probe ({i},{j}) accepted after {acc} fulfillments")
            }
            CheckOrigin::StateCollision { first, second, state } => write!(
                f,
                "probes ({},{}) and ({},{}) share state {} at block indices {} and {}",
                first.0, first.1, second.0, second.1, state, first.2, second.2
            ),
            CheckOrigin::PathWord { i, rows } => {
                write!(f, "matrix path for promising agent {i} through rows {rows:?}")
            }
        }
    }
}

/// A verified disagreement between the automaton and the language.
///
/// `word` always carries the counterexample in run-length form; `lasso` and
/// `run` are filled in when the word is small enough to expand.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub direction: Direction,
    pub word: RleWord,
    pub lasso: Option<LassoWord>,
    pub run: Option<RunDescriptor>,
    pub origin: CheckOrigin,
}

/// How one promising agent's state set was certified large.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// A single probe's run shows at least the required number of distinct
    /// pre-accepting block states.
    LongAccPrefix,
    /// The union of block states across this agent's probes is large.
    LargeQi,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessKind::LongAccPrefix => f.write_str("long pre-accepting run"),
            WitnessKind::LargeQi => f.write_str("large probe-state union"),
        }
    }
}

/// Certification for one promising (upper-half) agent.
#[derive(Debug, Clone)]
pub struct AgentWitness {
    pub agent: u32,
    pub kind: WitnessKind,
    /// Distinct block states certified for this agent.
    pub measured: u64,
    /// The per-agent target `floor(k^(4/3)/4)`.
    pub threshold: u64,
}

/// Aggregate accounting when every promising agent certifies its share of
/// the lower bound: the per-agent sets are pairwise disjoint, so their
/// sizes add up.
#[derive(Debug, Clone)]
pub struct Witness {
    pub k: u32,
    /// States of the normalized automaton the probes ran against.
    pub normalized_states: u64,
    /// The per-agent target `floor(k^(4/3)/4)`.
    pub per_agent_threshold: u64,
    pub per_agent: Vec<AgentWitness>,
    /// Sum of the per-agent certified counts (valid because the sets are
    /// disjoint).
    pub certified_total: u64,
    /// `k * floor(k^(4/3)/4)`: what the disjoint union must reach in the
    /// normalized automaton.
    pub threshold_normalized: u64,
    /// Half of that: the bound carried back to the input automaton, since
    /// normalization at most doubles the state count. At `k = 64` this is
    /// `64 * 256 / 8 = 2048`.
    pub threshold_original: u64,
    /// Probes that were run and checked.
    pub probes: u64,
    /// Cross-agent probe pairs whose state sets were checked for overlap.
    pub disjointness_pairs: u64,
}

/// Outcome of [`crate::falsify`].
#[derive(Debug, Clone)]
pub enum Verdict {
    /// A concrete word on which the automaton and the language disagree,
    /// re-verified on both sides.
    CounterexampleVerified(Box<Counterexample>),
    /// No disagreement found, and every promising agent certified its share
    /// of the state lower bound.
    LowerBoundWitness(Witness),
    /// Something prevented either conclusion; never a silent pass.
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, Verdict::CounterexampleVerified(_))
    }

    pub fn is_witness(&self) -> bool {
        matches!(self, Verdict::LowerBoundWitness(_))
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "counterexample: {}", self.direction)?;
        writeln!(f, "  origin: {}", self.origin)?;
        write!(f, "  word: {}", self.word)?;
        if let Some(lasso) = &self.lasso {
            write!(f, "\n  expanded: {lasso}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "lower-bound witness at k={}: {} disjoint probe-state sets, \
             each needing {} states",
            self.k,
            self.per_agent.len(),
            self.per_agent_threshold
        )?;
        for w in &self.per_agent {
            writeln!(
                f,
                "  agent {}: {} ({} >= {})",
                w.agent, w.kind, w.measured, w.threshold
            )?;
        }
        writeln!(
            f,
            "  certified total: {} distinct states in the normalized automaton \
             (threshold {})",
            self.certified_total, self.threshold_normalized
        )?;
        writeln!(
            f,
            "  input-automaton threshold k*k^(4/3)/8 = {} (normalization at \
             most doubles states; this automaton has {} normalized states)",
            self.threshold_original, self.normalized_states
        )?;
        write!(
            f,
            "  checked: {} probes, {} cross-agent overlap pairs",
            self.probes, self.disjointness_pairs
        )
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::CounterexampleVerified(c) => c.fmt(f),
            Verdict::LowerBoundWitness(w) => w.fmt(f),
            Verdict::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}
