//! The probe-word family: agent `i` makes one promise that is never kept,
//! while agent `j` is promised and fulfilled once per cycle lap. The lap
//! carries a long block of `j`s followed by the overlines of every agent
//! except `i`.

use omega_core::{LassoWord, RleWord, Segment, Symbol};

use crate::error::LkError;

fn check_agent(s: u32, k: u32) -> Result<(), LkError> {
    if s < 1 || s > 2 * k {
        return Err(LkError::AgentOutOfRange { agent: s, max: 2 * k });
    }
    Ok(())
}

/// The overlined symbols of all agents except `i`, in increasing agent
/// order — `2k - 1` symbols.
pub fn build_v(i: u32, k: u32) -> Result<Vec<Symbol>, LkError> {
    check_agent(i, k)?;
    Ok((1..=2 * k).filter(|&s| s != i).map(Symbol::overlined).collect())
}

/// The word `i (j^n ~1 ~2 .. skipping ~i .. ~2k)^w`: prefix `[i]`, cycle of
/// `n + 2k - 1` letters.
pub fn build_w(i: u32, j: u32, n: u64, k: u32) -> Result<LassoWord, LkError> {
    check_agent(i, k)?;
    check_agent(j, k)?;
    if i == j {
        return Err(LkError::EqualAgents(i));
    }
    if n == 0 {
        return Err(LkError::EmptyBlock);
    }
    let mut cycle = Vec::with_capacity(n as usize + 2 * k as usize - 1);
    cycle.resize(n as usize, Symbol::plain(j));
    cycle.extend(build_v(i, k)?);
    Ok(LassoWord::new(vec![Symbol::plain(i)], cycle))
}

/// Same word as [`build_w`] in run-length form, usable when `n` is too
/// large to materialize.
pub fn build_w_rle(i: u32, j: u32, n: u64, k: u32) -> Result<RleWord, LkError> {
    check_agent(i, k)?;
    check_agent(j, k)?;
    if i == j {
        return Err(LkError::EqualAgents(i));
    }
    if n == 0 {
        return Err(LkError::EmptyBlock);
    }
    let prefix = vec![Segment { symbol: Symbol::plain(i), count: 1 }];
    let mut cycle = vec![Segment { symbol: Symbol::plain(j), count: n }];
    cycle.extend(
        build_v(i, k)?.into_iter().map(|symbol| Segment { symbol, count: 1 }),
    );
    Ok(RleWord::new(prefix, cycle))
}
