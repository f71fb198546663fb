//! Times a single probe at a given parameter: `one_probe [k]`.

use std::time::Instant;

use bound_falsifier::{matrix_cols, probe_one, ProbeOutcome};
use lk_automata::build_ncw;
use omega_core::{normalize, EngineLimits};

fn main() {
    let k: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(64);
    let t0 = Instant::now();
    let a = build_ncw(k).unwrap();
    println!("built {} states in {:.2?}", a.num_states(), t0.elapsed());

    let t1 = Instant::now();
    let n = normalize(&a).unwrap();
    println!("normalized (was_normal={}) in {:.2?}", n.was_normal, t1.elapsed());

    let cap = matrix_cols(k).saturating_sub(1).max(2 * k as u64 + 1);
    let limits = EngineLimits::default();
    for (i, j) in [(k + 1, 1), (k + 2, 2)] {
        let t = Instant::now();
        let out = probe_one(&n.automaton, k, i, j, cap, &limits).unwrap();
        let took = t.elapsed();
        match out {
            ProbeOutcome::Accepted(p) => println!(
                "probe ({i},{j}): acc={} stored={} in {took:.2?}",
                p.acc,
                p.block_states.len()
            ),
            ProbeOutcome::Rejected => println!("probe ({i},{j}): rejected in {took:.2?}"),
        }
    }
}
