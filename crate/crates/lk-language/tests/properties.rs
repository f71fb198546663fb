//! Randomized checks of the interpretation and membership against literal
//! re-evaluations of their definitions, plus the structural facts about
//! the probe-word family that the falsifier relies on.

use lk_language::{build_w, interpret, is_member, InterpretationLetter};
use omega_core::{random_lasso, rng_from_seed, LassoWord};
use proptest::prelude::*;

/// Literal position-wise evaluation: for each position, scan an explicit
/// window for the later fulfillment (a window of one prefix plus one full
/// lap always settles the question) and scan backward for a pending
/// promise.
fn reference_h(w: &LassoWord, k: u32, upto: u64) -> Vec<InterpretationLetter> {
    let _ = k;
    let window = w.prefix_len() + w.cycle_len();
    (1..=upto)
        .map(|i| {
            let sym = w.at(i);
            if sym.is_plain() {
                let bar = sym.bar();
                let occurs = (i + 1..=i + window).any(|p| w.at(p) == bar);
                if occurs {
                    InterpretationLetter::Sharp
                } else {
                    InterpretationLetter::Zero
                }
            } else {
                let plain = sym.bar();
                let mut pending = false;
                for j in (1..i).rev() {
                    if w.at(j) == sym {
                        break;
                    }
                    if w.at(j) == plain {
                        pending = true;
                        break;
                    }
                }
                if pending {
                    InterpretationLetter::Agent(sym.agent())
                } else {
                    InterpretationLetter::Sharp
                }
            }
        })
        .collect()
}

proptest! {
    /// The lasso-shaped interpretation matches the literal definition at
    /// every unrolled position.
    #[test]
    fn interpretation_matches_literal_definition(seed in any::<u64>(), k in 1u32..3) {
        let mut rng = rng_from_seed(seed);
        let w = random_lasso(&mut rng, k, 4, 4);
        let h = interpret(&w, k).unwrap();
        let upto = w.prefix_len() + (2 * k as u64 + 2) * w.cycle_len();
        let reference = reference_h(&w, k, upto);
        for (idx, expected) in reference.iter().enumerate() {
            let pos = idx as u64 + 1;
            prop_assert_eq!(h.at(pos), *expected, "position {} of {}", pos, w);
        }
    }

    /// Membership only depends on the infinite word, not on how the lasso
    /// is cut.
    #[test]
    fn membership_invariant_under_reshaping(seed in any::<u64>(), k in 1u32..3) {
        let mut rng = rng_from_seed(seed);
        let w = random_lasso(&mut rng, k, 4, 4);
        let base = is_member(&w, k).unwrap();

        let mut unrolled_prefix = w.prefix().to_vec();
        unrolled_prefix.extend_from_slice(w.cycle());
        let unrolled = LassoWord::new(unrolled_prefix, w.cycle().to_vec());
        prop_assert_eq!(is_member(&unrolled, k).unwrap(), base);

        let mut rot_prefix = w.prefix().to_vec();
        rot_prefix.push(w.cycle()[0]);
        let mut rot_cycle = w.cycle()[1..].to_vec();
        rot_cycle.push(w.cycle()[0]);
        let rotated = LassoWord::new(rot_prefix, rot_cycle);
        prop_assert_eq!(is_member(&rotated, k).unwrap(), base);
    }

    /// The probe word's interpretation has exactly one zero — the opening
    /// promise — and is a member via the recurring fulfillment.
    #[test]
    fn probe_word_has_single_zero(k in 1u32..4, i in 1u32..7, j in 1u32..7, n in 1u64..6) {
        prop_assume!(i <= 2 * k && j <= 2 * k && i != j);
        let w = build_w(i, j, n, k).unwrap();
        let h = interpret(&w, k).unwrap();
        prop_assert_eq!(h.at(1), InterpretationLetter::Zero);
        let total = h.prefix.len() + h.cycle.len();
        for pos in 2..=total as u64 {
            prop_assert_ne!(h.at(pos), InterpretationLetter::Zero, "position {}", pos);
        }
        prop_assert!(is_member(&w, k).unwrap());
    }

    /// Gluing an initial piece of one probe word onto the tail of another
    /// (with a different promising agent) fulfills every promise, so the
    /// spliced word drops out of the language.
    #[test]
    fn spliced_probe_words_are_rejected(
        k in 2u32..4,
        picks in any::<u64>(),
        n1 in 1u64..5,
        n2 in 1u64..5,
    ) {
        let agents = 2 * k;
        // Derive i, j, m, l from the seed under the constraints m != i,
        // i != j, j != l, m != j.
        let mut x = picks;
        let mut draw = |excl: &[u32]| {
            loop {
                let c = (x % agents as u64) as u32 + 1;
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if !excl.contains(&c) {
                    return c;
                }
            }
        };
        let i = draw(&[]);
        let j = draw(&[i]);
        let m = draw(&[i, j]);
        let l = draw(&[j]);

        let w1 = build_w(i, m, n1, k).unwrap();
        let w2 = build_w(j, l, n2, k).unwrap();
        let cut = 1 + (picks % (2 * w1.cycle_len())) as u64;
        let from = 2 + (picks / 7 % (2 * w2.cycle_len())) as u64;

        let mut prefix = w1.take(cut);
        let tail = w2.suffix(from);
        prefix.extend_from_slice(tail.prefix());
        let spliced = LassoWord::new(prefix, tail.cycle().to_vec());
        prop_assert!(!is_member(&spliced, k).unwrap(), "spliced {}", spliced);
    }
}
