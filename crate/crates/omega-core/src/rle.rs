//! Run-length-encoded lasso words.
//!
//! The probe words used elsewhere in this workspace repeat single symbols
//! astronomically many times (blocks of length equal to a state count), so
//! they are represented as segments `symbol x count` rather than letter
//! vectors. The compressed engine consumes this form directly.

use std::fmt;
use std::str::FromStr;

use crate::error::{EngineError, ParseError};
use crate::lasso::LassoWord;
use crate::symbol::Symbol;

/// A maximal (or at least uniform) run of one symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub symbol: Symbol,
    pub count: u64,
}

impl Segment {
    pub fn new(symbol: Symbol, count: u64) -> Segment {
        assert!(count >= 1, "segments hold at least one letter");
        Segment { symbol, count }
    }
}

/// An ultimately periodic word in run-length encoding: `prefix . cycle^omega`
/// where both parts are segment lists. Construction normalizes the segments
/// (drops empty ones, merges adjacent runs of the same symbol), so equality
/// is insensitive to how the caller chunked the letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RleWord {
    prefix: Vec<Segment>,
    cycle: Vec<Segment>,
    prefix_len: u64,
    cycle_len: u64,
}

fn normalize_segments(raw: Vec<Segment>) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::with_capacity(raw.len());
    for seg in raw {
        if seg.count == 0 {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.symbol == seg.symbol => last.count += seg.count,
            _ => out.push(seg),
        }
    }
    out
}

fn total_len(segs: &[Segment]) -> u64 {
    segs.iter().map(|s| s.count).sum()
}

impl RleWord {
    pub fn new(prefix: Vec<Segment>, cycle: Vec<Segment>) -> RleWord {
        let prefix = normalize_segments(prefix);
        let cycle = normalize_segments(cycle);
        let prefix_len = total_len(&prefix);
        let cycle_len = total_len(&cycle);
        assert!(cycle_len >= 1, "the cycle of a lasso word must be nonempty");
        RleWord { prefix, cycle, prefix_len, cycle_len }
    }

    pub fn periodic(cycle: Vec<Segment>) -> RleWord {
        RleWord::new(Vec::new(), cycle)
    }

    pub fn from_lasso(w: &LassoWord) -> RleWord {
        let compress = |syms: &[Symbol]| {
            syms.iter().map(|&s| Segment::new(s, 1)).collect::<Vec<_>>()
        };
        RleWord::new(compress(w.prefix()), compress(w.cycle()))
    }

    pub fn prefix(&self) -> &[Segment] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Segment] {
        &self.cycle
    }

    pub fn prefix_len(&self) -> u64 {
        self.prefix_len
    }

    pub fn cycle_len(&self) -> u64 {
        self.cycle_len
    }

    /// The letter at 1-based position `pos`.
    pub fn at(&self, pos: u64) -> Symbol {
        assert!(pos >= 1, "positions are 1-based");
        let mut idx = pos - 1;
        if idx < self.prefix_len {
            for seg in &self.prefix {
                if idx < seg.count {
                    return seg.symbol;
                }
                idx -= seg.count;
            }
            unreachable!()
        }
        idx = (idx - self.prefix_len) % self.cycle_len;
        for seg in &self.cycle {
            if idx < seg.count {
                return seg.symbol;
            }
            idx -= seg.count;
        }
        unreachable!()
    }

    /// The first `n` letters as a segment list, unrolling the cycle as far
    /// as needed.
    pub fn take_segments(&self, n: u64) -> Vec<Segment> {
        let mut out: Vec<Segment> = Vec::new();
        let mut remaining = n;
        let mut push = |symbol: Symbol, count: u64| {
            if count == 0 {
                return;
            }
            match out.last_mut() {
                Some(last) if last.symbol == symbol => last.count += count,
                _ => out.push(Segment::new(symbol, count)),
            }
        };
        for seg in &self.prefix {
            if remaining == 0 {
                return out;
            }
            let take = seg.count.min(remaining);
            push(seg.symbol, take);
            remaining -= take;
        }
        while remaining > 0 {
            for seg in &self.cycle {
                if remaining == 0 {
                    break;
                }
                let take = seg.count.min(remaining);
                push(seg.symbol, take);
                remaining -= take;
            }
        }
        out
    }

    /// The suffix starting at 1-based position `pos`, as an `RleWord` with
    /// the same cycle length (the cycle is rotated when `pos` lands inside
    /// the periodic part).
    pub fn suffix(&self, pos: u64) -> RleWord {
        assert!(pos >= 1, "positions are 1-based");
        let idx = pos - 1;
        if idx <= self.prefix_len {
            let mut skip = idx;
            let mut prefix = Vec::new();
            for seg in &self.prefix {
                if skip >= seg.count {
                    skip -= seg.count;
                    continue;
                }
                prefix.push(Segment::new(seg.symbol, seg.count - skip));
                skip = 0;
            }
            return RleWord::new(prefix, self.cycle.clone());
        }
        let mut off = (idx - self.prefix_len) % self.cycle_len;
        let mut head = Vec::new();
        let mut tail = Vec::new();
        for seg in &self.cycle {
            if off >= seg.count {
                off -= seg.count;
                tail.push(*seg);
                continue;
            }
            if off > 0 {
                tail.push(Segment::new(seg.symbol, off));
                head.push(Segment::new(seg.symbol, seg.count - off));
                off = 0;
            } else {
                head.push(*seg);
            }
        }
        head.extend(tail);
        RleWord::new(Vec::new(), head)
    }

    /// Expands into an explicit [`LassoWord`], refusing when the expansion
    /// would exceed `cap` letters.
    pub fn expand(&self, cap: u64) -> Result<LassoWord, EngineError> {
        let needed = self.prefix_len + self.cycle_len;
        if needed > cap {
            return Err(EngineError::BudgetExceeded(format!(
                "expanding a word of {needed} letters exceeds the cap of {cap}"
            )));
        }
        let expand_part = |segs: &[Segment]| {
            let mut out = Vec::new();
            for seg in segs {
                out.extend(std::iter::repeat(seg.symbol).take(seg.count as usize));
            }
            out
        };
        Ok(LassoWord::new(expand_part(&self.prefix), expand_part(&self.cycle)))
    }

    pub fn max_agent(&self) -> u32 {
        self.prefix
            .iter()
            .chain(self.cycle.iter())
            .map(|s| s.symbol.agent())
            .max()
            .unwrap_or(0)
    }
}

fn write_segments(f: &mut fmt::Formatter<'_>, segs: &[Segment], lead: bool) -> fmt::Result {
    let mut first = lead;
    for seg in segs {
        if !first {
            write!(f, " ")?;
        }
        first = false;
        if seg.count == 1 {
            write!(f, "{}", seg.symbol)?;
        } else {
            write!(f, "{}x{}", seg.symbol, seg.count)?;
        }
    }
    Ok(())
}

impl fmt::Display for RleWord {
    /// Renders as `3x5 ~1 | 2x100`: `symbol x count` tokens (count omitted
    /// when 1) with the same `|` lasso separator as explicit words.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_segments(f, &self.prefix, true)?;
        if self.prefix.is_empty() {
            write!(f, "|")?;
        } else {
            write!(f, " |")?;
        }
        if !self.cycle.is_empty() {
            write!(f, " ")?;
        }
        write_segments(f, &self.cycle, true)
    }
}

impl FromStr for RleWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<RleWord, ParseError> {
        let (prefix_text, cycle_text) = s
            .split_once('|')
            .ok_or_else(|| ParseError::other("a lasso word needs a `|` before its cycle"))?;
        if cycle_text.contains('|') {
            return Err(ParseError::other("a lasso word has exactly one `|`"));
        }
        let parse_part = |text: &str| -> Result<Vec<Segment>, ParseError> {
            text.split_whitespace()
                .map(|token| {
                    let (sym_text, count) = match token.split_once('x') {
                        Some((s, c)) => {
                            let count: u64 = c.parse().map_err(|_| {
                                ParseError::other(format!("bad segment count in {token:?}"))
                            })?;
                            if count == 0 {
                                return Err(ParseError::other(format!(
                                    "segment count must be positive in {token:?}"
                                )));
                            }
                            (s, count)
                        }
                        None => (token, 1),
                    };
                    Ok(Segment::new(sym_text.parse::<Symbol>()?, count))
                })
                .collect()
        };
        let prefix = parse_part(prefix_text)?;
        let cycle = parse_part(cycle_text)?;
        if total_len(&cycle) == 0 {
            return Err(ParseError::other("the cycle of a lasso word must be nonempty"));
        }
        Ok(RleWord::new(prefix, cycle))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rle(text: &str) -> RleWord {
        text.parse().unwrap()
    }

    fn lasso(text: &str) -> LassoWord {
        text.parse().unwrap()
    }

    #[test]
    fn normalization_merges_and_drops() {
        let w = RleWord::new(
            vec![
                Segment { symbol: "1".parse().unwrap(), count: 2 },
                Segment { symbol: "1".parse().unwrap(), count: 3 },
                Segment { symbol: "~2".parse().unwrap(), count: 0 },
            ],
            vec![Segment::new("2".parse().unwrap(), 4)],
        );
        assert_eq!(w, rle("1x5 | 2x4"));
        assert_eq!(w.prefix_len(), 5);
        assert_eq!(w.cycle_len(), 4);
    }

    #[test]
    fn indexing_matches_explicit_expansion() {
        let w = rle("1x3 ~2 | 2x2 ~1");
        let explicit = w.expand(100).unwrap();
        for pos in 1..=40u64 {
            assert_eq!(w.at(pos), explicit.at(pos), "position {pos}");
        }
    }

    #[test]
    fn round_trips_through_text() {
        for text in ["| 1", "1x5 ~1 | 2x100", "~1 ~1 | 3"] {
            let w = rle(text);
            assert_eq!(w.to_string().parse::<RleWord>().unwrap(), w);
        }
    }

    #[test]
    fn display_merges_adjacent_runs() {
        assert_eq!(rle("~1 ~1 | 3").to_string(), "~1x2 | 3");
    }

    #[test]
    fn from_lasso_compresses() {
        let w = RleWord::from_lasso(&lasso("1 1 1 | 2 2 ~1"));
        assert_eq!(w, rle("1x3 | 2x2 ~1"));
    }

    #[test]
    fn take_segments_unrolls_cycle() {
        let w = rle("1 | 2x2 1");
        assert_eq!(w.take_segments(0), vec![]);
        assert_eq!(w.take_segments(2), rle("1 2 | 9").prefix().to_vec());
        // 1 22 1 22 1 -> positions 1..=7: 1 2 2 1 2 2 1
        let taken = w.take_segments(7);
        let expect: Vec<Segment> = vec![
            Segment::new("1".parse().unwrap(), 1),
            Segment::new("2".parse().unwrap(), 2),
            Segment::new("1".parse().unwrap(), 1),
            Segment::new("2".parse().unwrap(), 2),
            Segment::new("1".parse().unwrap(), 1),
        ];
        assert_eq!(taken, expect);
    }

    #[test]
    fn suffix_in_prefix_and_cycle() {
        let w = rle("1x4 | 2x3 ~1");
        assert_eq!(w.suffix(3), rle("1x2 | 2x3 ~1"));
        assert_eq!(w.suffix(5), rle("| 2x3 ~1"));
        // Position 7 is the third 2 in the first cycle pass.
        assert_eq!(w.suffix(7), rle("| 2 ~1 2x2"));
        // A full lap later the rotation is identical.
        assert_eq!(w.suffix(11), rle("| 2 ~1 2x2"));
    }

    #[test]
    fn suffix_agrees_with_explicit() {
        let w = rle("1x3 | ~1 2x2");
        let explicit = w.expand(1000).unwrap();
        for pos in 1..=12u64 {
            let a = w.suffix(pos).expand(1000).unwrap();
            let b = explicit.suffix(pos);
            for t in 1..=10u64 {
                assert_eq!(a.at(t), b.at(t), "suffix {pos} position {t}");
            }
        }
    }

    #[test]
    fn expand_respects_cap() {
        let w = rle("1x1000 | 2");
        assert!(w.expand(100).is_err());
        assert!(w.expand(2000).is_ok());
    }
}
