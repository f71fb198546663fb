//! Normal form for co-Buchi automata.
//!
//! A co-Buchi automaton is normal when no transition leaves the accepting
//! set, so a run that enters alpha is trapped there. Every co-Buchi
//! automaton has an equivalent normal one over `Q x {0}  u  alpha x {1}`:
//! layer 0 is a full non-accepting copy, layer 1 is an accepting copy of
//! alpha restricted to transitions inside alpha, and a run may switch
//! layers whenever it moves into an alpha state. Guessing the switch point
//! costs nothing: staying in alpha forever from position t in the original
//! is exactly an infinite layer-1 path from position t here.

use crate::automaton::{AcceptanceKind, AutomatonBuilder, OmegaAutomaton, StateId};
use crate::error::EngineError;
use crate::symbol::Symbol;

/// Result of [`normalize`]: the normal automaton plus, per output state,
/// the input state it copies and which layer the copy lives on.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub automaton: OmegaAutomaton,
    /// `back_refs[q'] = (q, layer)`: output state `q'` copies input state
    /// `q`; accepting copies are layer 1, the rest layer 0.
    pub back_refs: Vec<(StateId, u8)>,
    /// True when the input was already normal and was passed through
    /// unchanged (back references are then the identity).
    pub was_normal: bool,
}

/// Converts a co-Buchi automaton into normal form. The output has at most
/// twice as many states and recognizes the same language. Already-normal
/// input is returned unchanged.
///
/// The doubling path materializes every `(state, symbol)` pair, so it is
/// meant for small automata; the generated families are built in normal
/// form directly and take the pass-through path.
pub fn normalize(a: &OmegaAutomaton) -> Result<Normalized, EngineError> {
    if a.kind() != AcceptanceKind::CoBuchi {
        return Err(EngineError::RequiresCoBuchi);
    }
    if a.is_normal_form() {
        let back_refs = (0..a.num_states())
            .map(|q| (q, a.is_accepting(q) as u8))
            .collect();
        return Ok(Normalized { automaton: a.clone(), back_refs, was_normal: true });
    }

    let n = a.num_states();
    // Layer-0 copy of q keeps id q; the layer-1 copies of alpha states
    // follow in ascending order.
    let mut layer1_id = vec![u32::MAX; n as usize];
    let mut back_refs: Vec<(StateId, u8)> = (0..n).map(|q| (q, 0)).collect();
    for q in 0..n {
        if a.is_accepting(q) {
            layer1_id[q as usize] = back_refs.len() as u32;
            back_refs.push((q, 1));
        }
    }

    let total = back_refs.len() as u32;
    let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, a.alphabet_k(), total);
    b.set_initial(a.initial());
    for q_prime in n..total {
        b.mark_accepting(q_prime);
    }
    for q in 0..n {
        for s in 0..a.num_symbols() {
            let sym = Symbol::from_index(s);
            for target in a.successors_by_index(q, s as u16) {
                b.add_edge(q, sym, target);
                if a.is_accepting(target) {
                    // Entering alpha may switch to the trapped copy.
                    b.add_edge(q, sym, layer1_id[target as usize]);
                    if a.is_accepting(q) {
                        b.add_edge(layer1_id[q as usize], sym, layer1_id[target as usize]);
                    }
                }
            }
        }
    }

    let automaton = b.build();
    debug_assert!(automaton.is_normal_form());
    Ok(Normalized { automaton, back_refs, was_normal: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lasso::LassoWord;
    use crate::product::accepts;
    use crate::symbol::alphabet;

    fn sym(text: &str) -> Symbol {
        text.parse().unwrap()
    }

    /// Every lasso word over the k=1 alphabet with `|prefix| <= max_p` and
    /// `1 <= |cycle| <= max_c`.
    fn all_lassos(max_p: usize, max_c: usize) -> Vec<LassoWord> {
        let syms: Vec<Symbol> = alphabet(1).collect();
        let mut words = Vec::new();
        let seqs_of = |len: usize| -> Vec<Vec<Symbol>> {
            let mut out = vec![Vec::new()];
            for _ in 0..len {
                out = out
                    .into_iter()
                    .flat_map(|base: Vec<Symbol>| {
                        syms.iter().map(move |&s| {
                            let mut next = base.clone();
                            next.push(s);
                            next
                        })
                    })
                    .collect();
            }
            out
        };
        for p_len in 0..=max_p {
            for c_len in 1..=max_c {
                for prefix in seqs_of(p_len) {
                    for cycle in seqs_of(c_len) {
                        words.push(LassoWord::new(prefix.clone(), cycle));
                    }
                }
            }
        }
        words
    }

    #[test]
    fn pass_through_when_already_normal() {
        let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, 1, 2);
        b.set_default(0, 0);
        b.add_edge(0, sym("~1"), 1);
        b.add_edge(1, sym("1"), 1);
        b.mark_accepting(1);
        let a = b.build();
        let norm = normalize(&a).unwrap();
        assert!(norm.was_normal);
        assert_eq!(norm.automaton, a);
        assert_eq!(norm.back_refs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn rejects_buchi_input() {
        let mut b = AutomatonBuilder::new(AcceptanceKind::Buchi, 1, 1);
        b.set_default(0, 0);
        let a = b.build();
        assert!(matches!(normalize(&a), Err(EngineError::RequiresCoBuchi)));
    }

    #[test]
    fn universal_single_state() {
        let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, 1, 1);
        b.set_default(0, 0);
        b.mark_accepting(0);
        let a = b.build();
        let norm = normalize(&a).unwrap();
        assert!(norm.automaton.num_states() <= 2);
        assert!(norm.automaton.is_normal_form());
        for w in all_lassos(1, 2) {
            assert_eq!(accepts(&norm.automaton, &w), Ok(true), "on {w}");
        }
    }

    /// 2-state machine with a genuine alpha exit: alpha state 0 can fall
    /// back to plain state 1 on ~1, both loop on 1, and 1 returns on ~1.
    fn leaky() -> OmegaAutomaton {
        let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, 1, 2);
        b.add_edge(0, sym("1"), 0);
        b.add_edge(0, sym("~1"), 1);
        b.add_edge(1, sym("1"), 1);
        b.add_edge(1, sym("~1"), 0);
        b.mark_accepting(0);
        b.build()
    }

    #[test]
    fn doubling_produces_normal_equivalent() {
        let a = leaky();
        assert!(!a.is_normal_form());
        let norm = normalize(&a).unwrap();
        assert!(!norm.was_normal);
        assert!(norm.automaton.is_normal_form());
        assert!(norm.automaton.num_states() <= 2 * a.num_states());
        for w in all_lassos(3, 3) {
            assert_eq!(
                accepts(&a, &w).unwrap(),
                accepts(&norm.automaton, &w).unwrap(),
                "disagree on {w}"
            );
        }
    }

    #[test]
    fn back_refs_cover_both_layers() {
        let a = leaky();
        let norm = normalize(&a).unwrap();
        let m = &norm.automaton;
        assert_eq!(norm.back_refs.len(), m.num_states() as usize);
        for (q_prime, &(q, layer)) in norm.back_refs.iter().enumerate() {
            assert!(q < a.num_states());
            assert_eq!(layer == 1, m.is_accepting(q_prime as StateId));
            if layer == 1 {
                assert!(a.is_accepting(q), "layer-1 copies come from alpha");
            }
        }
        // Every input state has a layer-0 copy; every alpha state also a
        // layer-1 copy.
        let layer0: Vec<StateId> =
            norm.back_refs.iter().filter(|r| r.1 == 0).map(|r| r.0).collect();
        let layer1: Vec<StateId> =
            norm.back_refs.iter().filter(|r| r.1 == 1).map(|r| r.0).collect();
        assert_eq!(layer0, (0..a.num_states()).collect::<Vec<_>>());
        assert_eq!(layer1, a.accepting_states());
    }
}
