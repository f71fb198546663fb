//! Alphabet symbols.
//!
//! The alphabet for parameter `k` has `4k` symbols: one plain and one
//! overlined copy of each agent `1..=2k`. A plain symbol is a promise made
//! by its agent, the overlined symbol is the matching fulfillment. In text,
//! a plain symbol is the agent number (`"3"`) and an overlined symbol is
//! prefixed with a tilde (`"~3"`).

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// Whether a symbol is the plain (promise) or overlined (fulfillment) copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Plain,
    Overlined,
}

/// One alphabet symbol: an agent with a polarity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    agent: u32,
    polarity: Polarity,
}

impl Symbol {
    /// The plain (promise) symbol of `agent`. Agents are numbered from 1.
    pub fn plain(agent: u32) -> Symbol {
        assert!(agent >= 1, "agents are numbered from 1");
        Symbol { agent, polarity: Polarity::Plain }
    }

    /// The overlined (fulfillment) symbol of `agent`.
    pub fn overlined(agent: u32) -> Symbol {
        assert!(agent >= 1, "agents are numbered from 1");
        Symbol { agent, polarity: Polarity::Overlined }
    }

    pub fn agent(self) -> u32 {
        self.agent
    }

    pub fn polarity(self) -> Polarity {
        self.polarity
    }

    pub fn is_plain(self) -> bool {
        self.polarity == Polarity::Plain
    }

    pub fn is_overlined(self) -> bool {
        self.polarity == Polarity::Overlined
    }

    /// The same agent with the opposite polarity.
    pub fn bar(self) -> Symbol {
        Symbol {
            agent: self.agent,
            polarity: match self.polarity {
                Polarity::Plain => Polarity::Overlined,
                Polarity::Overlined => Polarity::Plain,
            },
        }
    }

    /// Dense index of this symbol in the alphabet for any `k` with
    /// `agent <= 2k`: plain and overlined copies of an agent are adjacent.
    pub fn index(self) -> usize {
        ((self.agent - 1) as usize) * 2 + self.is_overlined() as usize
    }

    /// Inverse of [`Symbol::index`].
    pub fn from_index(index: usize) -> Symbol {
        let agent = (index / 2) as u32 + 1;
        if index % 2 == 0 {
            Symbol::plain(agent)
        } else {
            Symbol::overlined(agent)
        }
    }

    /// True if the agent fits the alphabet of parameter `k` (agents `1..=2k`).
    pub fn fits_alphabet(self, k: u32) -> bool {
        self.agent <= 2 * k
    }
}

/// All `4k` symbols of the alphabet for parameter `k`, in index order.
pub fn alphabet(k: u32) -> impl Iterator<Item = Symbol> {
    (0..4 * k as usize).map(Symbol::from_index)
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polarity {
            Polarity::Plain => write!(f, "{}", self.agent),
            Polarity::Overlined => write!(f, "~{}", self.agent),
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Symbol {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Symbol, ParseError> {
        let (polarity, digits) = match s.strip_prefix('~') {
            Some(rest) => (Polarity::Overlined, rest),
            None => (Polarity::Plain, s),
        };
        let agent: u32 = digits
            .parse()
            .map_err(|_| ParseError::bad_symbol(s))?;
        if agent == 0 {
            return Err(ParseError::bad_symbol(s));
        }
        Ok(Symbol { agent, polarity })
    }
}
