//! The promise/fulfillment reading of a word: each position is rewritten
//! into what actually happened there — a kept promise marker, an
//! unfulfilled promise, or the name of the agent whose promise was just
//! fulfilled.

use std::fmt;

use omega_core::LassoWord;

use crate::error::LkError;

/// One position of the interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InterpretationLetter {
    /// A promise that will be fulfilled later, or a fulfillment with
    /// nothing pending — either way, nothing to count here.
    Sharp,
    /// A promise that is never fulfilled afterwards.
    Zero,
    /// Agent `s` just fulfilled a pending promise.
    Agent(u32),
}

impl fmt::Display for InterpretationLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpretationLetter::Sharp => f.write_str("#"),
            InterpretationLetter::Zero => f.write_str("0"),
            InterpretationLetter::Agent(s) => write!(f, "{s}"),
        }
    }
}

/// The interpretation of a lasso word, itself a lasso. For a source word
/// with prefix length `u` and cycle length `v`, the interpretation carries
/// `u + v` prefix letters (the source prefix plus one cycle lap, during
/// which the per-agent pending statuses settle) and a `v`-letter cycle that
/// repeats exactly from there on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub prefix: Vec<InterpretationLetter>,
    pub cycle: Vec<InterpretationLetter>,
}

impl Interpretation {
    /// Letter at 1-based position `pos` of the infinite interpretation.
    pub fn at(&self, pos: u64) -> InterpretationLetter {
        assert!(pos >= 1, "positions are 1-based");
        let u = self.prefix.len() as u64;
        if pos <= u {
            self.prefix[pos as usize - 1]
        } else {
            self.cycle[((pos - u - 1) % self.cycle.len() as u64) as usize]
        }
    }

    pub fn has_zero(&self) -> bool {
        self.prefix
            .iter()
            .chain(self.cycle.iter())
            .any(|l| *l == InterpretationLetter::Zero)
    }

    /// True when the repeating part is nothing but kept promises — the
    /// whole tail of the interpretation is `#` from the cycle on.
    pub fn cycle_all_sharp(&self) -> bool {
        self.cycle.iter().all(|l| *l == InterpretationLetter::Sharp)
    }

    /// Fulfillments of agent `s` in the repeating part (each occurs
    /// infinitely often in the interpretation).
    pub fn cycle_fulfills(&self, s: u32) -> bool {
        self.cycle.contains(&InterpretationLetter::Agent(s))
    }

    /// Fulfillments of agent `s` in the non-repeating part.
    pub fn prefix_fulfillments(&self, s: u32) -> u64 {
        self.prefix.iter().filter(|l| **l == InterpretationLetter::Agent(s)).count() as u64
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.prefix {
            write!(f, "{l} ")?;
        }
        f.write_str("|")?;
        for l in &self.cycle {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_symbols(w: &LassoWord, k: u32) -> Result<(), LkError> {
    if let Some(bad) = w
        .prefix()
        .iter()
        .chain(w.cycle().iter())
        .find(|s| !s.fits_alphabet(k))
    {
        return Err(LkError::SymbolOutOfRange { symbol: bad.to_string(), agents: 2 * k });
    }
    Ok(())
}

/// Rewrites `w` position by position:
///
/// - a plain `s` becomes `#` when `~s` still occurs afterwards, and `0`
///   when it never does (the promise stays unfulfilled);
/// - an `~s` becomes `s` when a promise of `s` is pending (a plain `s`
///   occurred before with no `~s` in between), and `#` otherwise.
pub fn interpret(w: &LassoWord, k: u32) -> Result<Interpretation, LkError> {
    check_symbols(w, k)?;
    let agents = 2 * k as usize;
    let u = w.prefix_len() as usize;
    let v = w.cycle_len() as usize;

    // Which agents have their overline somewhere in the cycle (visible from
    // every position).
    let mut bar_in_cycle = vec![false; agents + 1];
    for s in w.cycle() {
        if s.is_overlined() {
            bar_in_cycle[s.agent() as usize] = true;
        }
    }
    // For prefix positions: does the overline occur strictly later within
    // the prefix? Computed right to left.
    let mut later_bar_in_prefix = vec![false; u];
    {
        let mut seen_bar = vec![false; agents + 1];
        for i in (0..u).rev() {
            let sym = w.prefix()[i];
            later_bar_in_prefix[i] = seen_bar[sym.agent() as usize];
            if sym.is_overlined() {
                seen_bar[sym.agent() as usize] = true;
            }
        }
    }

    let mut pending = vec![false; agents + 1];
    let mut letters = Vec::with_capacity(u + 2 * v);
    for t in 0..u + 2 * v {
        let sym = w.at(t as u64 + 1);
        let s = sym.agent() as usize;
        let letter = if sym.is_plain() {
            let fulfilled_later =
                if t < u { later_bar_in_prefix[t] || bar_in_cycle[s] } else { bar_in_cycle[s] };
            pending[s] = true;
            if fulfilled_later {
                InterpretationLetter::Sharp
            } else {
                InterpretationLetter::Zero
            }
        } else if pending[s] {
            pending[s] = false;
            InterpretationLetter::Agent(s as u32)
        } else {
            InterpretationLetter::Sharp
        };
        letters.push(letter);
    }
    let cycle = letters.split_off(u + v);
    Ok(Interpretation { prefix: letters, cycle })
}

#[cfg(test)]
mod tests {
    use super::*;
    use InterpretationLetter::{Agent, Sharp, Zero};

    fn word(text: &str) -> LassoWord {
        text.parse().unwrap()
    }

    #[test]
    fn no_promise_is_all_sharp() {
        let h = interpret(&word("| ~1"), 1).unwrap();
        assert_eq!(h.prefix, vec![Sharp]);
        assert_eq!(h.cycle, vec![Sharp]);
        assert!(h.cycle_all_sharp());
        assert!(!h.has_zero());
    }

    #[test]
    fn fulfillment_counts_not_promise() {
        let h = interpret(&word("1 ~2 ~1 | ~2"), 1).unwrap();
        assert_eq!(h.prefix, vec![Sharp, Sharp, Agent(1), Sharp]);
        assert_eq!(h.cycle, vec![Sharp]);
    }

    #[test]
    fn unfulfilled_promise_reads_as_zero() {
        let h = interpret(&word("1 | ~2"), 1).unwrap();
        assert_eq!(h.prefix, vec![Zero, Sharp]);
        assert_eq!(h.cycle, vec![Sharp]);
        assert!(h.has_zero());
    }

    #[test]
    fn one_fulfillment_per_pending_promise() {
        // Two promises of 1, one fulfillment: the bar clears the pending
        // status, so the second bar finds nothing.
        let h = interpret(&word("1 1 ~1 ~1 | ~2"), 1).unwrap();
        assert_eq!(h.prefix, vec![Sharp, Sharp, Agent(1), Sharp, Sharp]);
    }

    #[test]
    fn pending_status_settles_after_one_lap() {
        // Plain 1 in the prefix stays pending into the cycle; the cycle's
        // bar fulfills it once, after which laps are identical.
        let h = interpret(&word("1 | ~1 1"), 1).unwrap();
        assert_eq!(h.prefix, vec![Sharp, Agent(1), Sharp]);
        assert_eq!(h.cycle, vec![Agent(1), Sharp]);
        assert_eq!(h.at(2), Agent(1));
        assert_eq!(h.at(4), Agent(1));
        assert_eq!(h.at(6), Agent(1));
    }

    #[test]
    fn display_shows_lasso_shape() {
        let h = interpret(&word("1 | ~1 1"), 1).unwrap();
        assert_eq!(h.to_string(), "# 1 # | 1 #");
    }

    #[test]
    fn rejects_out_of_range_symbols() {
        assert_eq!(
            interpret(&word("| 3"), 1),
            Err(LkError::SymbolOutOfRange { symbol: "3".into(), agents: 2 })
        );
    }
}
