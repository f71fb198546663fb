//! Ultimately periodic words, given as a finite prefix and a repeated cycle.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::symbol::Symbol;

/// An ultimately periodic word `prefix . cycle^omega`. The cycle is never
/// empty; the prefix may be.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoWord {
    prefix: Vec<Symbol>,
    cycle: Vec<Symbol>,
}

impl LassoWord {
    pub fn new(prefix: Vec<Symbol>, cycle: Vec<Symbol>) -> LassoWord {
        assert!(!cycle.is_empty(), "the cycle of a lasso word must be nonempty");
        LassoWord { prefix, cycle }
    }

    /// A purely periodic word `cycle^omega`.
    pub fn periodic(cycle: Vec<Symbol>) -> LassoWord {
        LassoWord::new(Vec::new(), cycle)
    }

    pub fn prefix(&self) -> &[Symbol] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Symbol] {
        &self.cycle
    }

    pub fn prefix_len(&self) -> u64 {
        self.prefix.len() as u64
    }

    pub fn cycle_len(&self) -> u64 {
        self.cycle.len() as u64
    }

    /// The letter at 1-based position `pos`.
    pub fn at(&self, pos: u64) -> Symbol {
        assert!(pos >= 1, "positions are 1-based");
        let idx = pos - 1;
        if idx < self.prefix.len() as u64 {
            self.prefix[idx as usize]
        } else {
            let off = (idx - self.prefix.len() as u64) % self.cycle.len() as u64;
            self.cycle[off as usize]
        }
    }

    /// The first `n` letters, explicitly.
    pub fn take(&self, n: u64) -> Vec<Symbol> {
        (1..=n).map(|p| self.at(p)).collect()
    }

    /// The finite factor at 1-based positions `i..=j`.
    pub fn slice(&self, i: u64, j: u64) -> Vec<Symbol> {
        assert!(1 <= i && i <= j, "slice wants 1 <= i <= j");
        (i..=j).map(|p| self.at(p)).collect()
    }

    /// The suffix starting at 1-based position `pos`, as a lasso word with
    /// the same cycle length.
    pub fn suffix(&self, pos: u64) -> LassoWord {
        assert!(pos >= 1, "positions are 1-based");
        let idx = pos - 1;
        if idx <= self.prefix.len() as u64 {
            LassoWord::new(self.prefix[idx as usize..].to_vec(), self.cycle.clone())
        } else {
            let off = ((idx - self.prefix.len() as u64) % self.cycle.len() as u64) as usize;
            let mut cycle = self.cycle[off..].to_vec();
            cycle.extend_from_slice(&self.cycle[..off]);
            LassoWord::new(Vec::new(), cycle)
        }
    }

    /// The largest agent mentioned anywhere in the word, or 0 if the word
    /// somehow mentions none (impossible: the cycle is nonempty).
    pub fn max_agent(&self) -> u32 {
        self.prefix
            .iter()
            .chain(self.cycle.iter())
            .map(|s| s.agent())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for LassoWord {
    /// Renders as `a b c | d e`: prefix, a `|` separator, then the cycle.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sym in &self.prefix {
            write!(f, "{sym} ")?;
        }
        write!(f, "|")?;
        for sym in &self.cycle {
            write!(f, " {sym}")?;
        }
        Ok(())
    }
}

impl FromStr for LassoWord {
    type Err = ParseError;

    /// Parses `a b c | d e`. The part before `|` is the prefix (may be
    /// empty), the part after is the cycle (must be nonempty).
    fn from_str(s: &str) -> Result<LassoWord, ParseError> {
        let (prefix_text, cycle_text) = s
            .split_once('|')
            .ok_or_else(|| ParseError::other("a lasso word needs a `|` before its cycle"))?;
        if cycle_text.contains('|') {
            return Err(ParseError::other("a lasso word has exactly one `|`"));
        }
        let parse_part = |text: &str| -> Result<Vec<Symbol>, ParseError> {
            text.split_whitespace().map(str::parse).collect()
        };
        let prefix = parse_part(prefix_text)?;
        let cycle = parse_part(cycle_text)?;
        if cycle.is_empty() {
            return Err(ParseError::other("the cycle of a lasso word must be nonempty"));
        }
        Ok(LassoWord::new(prefix, cycle))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> LassoWord {
        text.parse().unwrap()
    }

    #[test]
    fn indexing_wraps_into_cycle() {
        let word = w("1 2 | ~1 3");
        assert_eq!(word.at(1), Symbol::plain(1));
        assert_eq!(word.at(2), Symbol::plain(2));
        assert_eq!(word.at(3), Symbol::overlined(1));
        assert_eq!(word.at(4), Symbol::plain(3));
        assert_eq!(word.at(5), Symbol::overlined(1));
        assert_eq!(word.at(1000), Symbol::plain(3));
    }

    #[test]
    fn suffix_inside_prefix() {
        let word = w("1 2 3 | 4");
        assert_eq!(word.suffix(2), w("2 3 | 4"));
        assert_eq!(word.suffix(4), w("| 4"));
    }

    #[test]
    fn suffix_inside_cycle_rotates() {
        let word = w("1 | 2 3 4");
        assert_eq!(word.suffix(3), w("| 3 4 2"));
        assert_eq!(word.suffix(6), w("| 3 4 2"));
        assert_eq!(word.suffix(5), w("| 2 3 4"));
    }

    #[test]
    fn display_round_trips() {
        for text in ["| 1", "1 2 | ~3", "~1 ~2 | 1 2 3"] {
            let word = w(text);
            assert_eq!(word.to_string().parse::<LassoWord>().unwrap(), word);
        }
    }

    #[test]
    fn rejects_empty_cycle() {
        assert!("1 2 |".parse::<LassoWord>().is_err());
        assert!("1 2".parse::<LassoWord>().is_err());
        assert!("1 | 2 | 3".parse::<LassoWord>().is_err());
    }

    #[test]
    fn slice_takes_inclusive_factor() {
        let word = w("1 2 | 3 4");
        let got = word.slice(2, 5);
        let expect: Vec<Symbol> =
            ["2", "3", "4", "3"].iter().map(|t| t.parse().unwrap()).collect();
        assert_eq!(got, expect);
        assert_eq!(w("| ~1").suffix(3), w("| ~1"));
    }

    #[test]
    fn take_expands() {
        let word = w("1 | 2 3");
        let taken = word.take(5);
        let expect: Vec<Symbol> =
            ["1", "2", "3", "2", "3"].iter().map(|t| t.parse().unwrap()).collect();
        assert_eq!(taken, expect);
    }
}
