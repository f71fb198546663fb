//! Seeded random generators for automata and words, used by the
//! differential tests here and by the sampling commands of the CLI.
//! Everything is deterministic given the seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::automaton::{AcceptanceKind, AutomatonBuilder, OmegaAutomaton};
use crate::lasso::LassoWord;
use crate::normalize::normalize;
use crate::rle::{RleWord, Segment};
use crate::symbol::{alphabet, Symbol};

/// The one RNG used across the workspace, so a printed seed reproduces a
/// run exactly.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_automaton<R: Rng>(
    rng: &mut R,
    kind: AcceptanceKind,
    k: u32,
    num_states: u32,
) -> OmegaAutomaton {
    assert!(num_states > 0);
    let mut b = AutomatonBuilder::new(kind, k, num_states);
    b.set_initial(0);
    for q in 0..num_states {
        if rng.gen_bool(0.4) {
            b.mark_accepting(q);
        }
        if rng.gen_bool(0.3) {
            b.set_default(q, rng.gen_range(0..num_states));
        }
        for sym in alphabet(k) {
            let roll: f64 = rng.gen();
            if roll < 0.5 {
                b.add_edge(q, sym, rng.gen_range(0..num_states));
                if rng.gen_bool(0.25) {
                    b.add_edge(q, sym, rng.gen_range(0..num_states));
                }
            } else if roll < 0.55 {
                b.forbid(q, sym);
            }
        }
    }
    b.build()
}

/// Random nondeterministic Buchi automaton (possibly with dead states or an
/// empty language — callers wanting structure should filter).
pub fn random_nbw<R: Rng>(rng: &mut R, k: u32, num_states: u32) -> OmegaAutomaton {
    random_automaton(rng, AcceptanceKind::Buchi, k, num_states)
}

/// Random nondeterministic co-Buchi automaton.
pub fn random_ncw<R: Rng>(rng: &mut R, k: u32, num_states: u32) -> OmegaAutomaton {
    random_automaton(rng, AcceptanceKind::CoBuchi, k, num_states)
}

/// Random co-Buchi automaton already in normal form (generated loose, then
/// normalized; up to `2 * num_states` states).
pub fn random_normal_ncw<R: Rng>(rng: &mut R, k: u32, num_states: u32) -> OmegaAutomaton {
    let a = random_ncw(rng, k, num_states);
    normalize(&a).expect("co-buchi input always normalizes").automaton
}

fn random_symbol<R: Rng>(rng: &mut R, k: u32) -> Symbol {
    Symbol::from_index(rng.gen_range(0..4 * k as usize))
}

/// Random lasso word with `prefix <= max_prefix` and `1 <= cycle <=
/// max_cycle` letters.
pub fn random_lasso<R: Rng>(rng: &mut R, k: u32, max_prefix: usize, max_cycle: usize) -> LassoWord {
    assert!(max_cycle >= 1);
    let plen = rng.gen_range(0..=max_prefix);
    let clen = rng.gen_range(1..=max_cycle);
    let prefix = (0..plen).map(|_| random_symbol(rng, k)).collect();
    let cycle = (0..clen).map(|_| random_symbol(rng, k)).collect();
    LassoWord::new(prefix, cycle)
}

/// Random run-length-encoded word: up to `max_prefix_segments` prefix and
/// `1..=max_cycle_segments` cycle segments, each `1..=max_count` letters.
pub fn random_rle<R: Rng>(
    rng: &mut R,
    k: u32,
    max_prefix_segments: usize,
    max_cycle_segments: usize,
    max_count: u64,
) -> RleWord {
    assert!(max_cycle_segments >= 1 && max_count >= 1);
    let ps = rng.gen_range(0..=max_prefix_segments);
    let cs = rng.gen_range(1..=max_cycle_segments);
    let seg = |rng: &mut R| Segment {
        symbol: random_symbol(rng, k),
        count: rng.gen_range(1..=max_count),
    };
    let prefix: Vec<Segment> = (0..ps).map(|_| seg(rng)).collect();
    let cycle: Vec<Segment> = (0..cs).map(|_| seg(rng)).collect();
    RleWord::new(prefix, cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_seed_reproduces() {
        let a1 = random_ncw(&mut rng_from_seed(7), 2, 5);
        let a2 = random_ncw(&mut rng_from_seed(7), 2, 5);
        assert_eq!(a1.to_text(), a2.to_text());
        let w1 = random_lasso(&mut rng_from_seed(9), 2, 4, 4);
        let w2 = random_lasso(&mut rng_from_seed(9), 2, 4, 4);
        assert_eq!(w1.to_string(), w2.to_string());
    }

    #[test]
    fn different_seeds_differ_somewhere() {
        let texts: Vec<String> =
            (0..8).map(|s| random_ncw(&mut rng_from_seed(s), 1, 4).to_text()).collect();
        assert!(texts.iter().any(|t| t != &texts[0]));
    }

    #[test]
    fn normal_generator_output_is_normal() {
        for seed in 0..20 {
            let a = random_normal_ncw(&mut rng_from_seed(seed), 1, 5);
            assert!(a.is_normal_form(), "seed {seed}");
            assert!(a.num_states() <= 10);
        }
    }

    #[test]
    fn words_respect_bounds() {
        for seed in 0..20 {
            let mut rng = rng_from_seed(seed);
            let w = random_lasso(&mut rng, 3, 5, 6);
            assert!(w.prefix_len() <= 5 && (1..=6).contains(&w.cycle_len()));
            assert!(w.max_agent() <= 6);
            let r = random_rle(&mut rng, 3, 2, 3, 50);
            assert!(r.cycle_len() >= 1);
            assert!(r.max_agent() <= 6);
        }
    }
}
