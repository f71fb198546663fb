//! Splits one probe's cost into analysis and boundary sampling.

use std::time::Instant;

use lk_automata::build_ncw;
use lk_language::build_w_rle;
use omega_core::{analyze_shortest_run, normalize, EngineLimits};

fn main() {
    let k: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(64);
    let a = build_ncw(k).unwrap();
    let n = normalize(&a).unwrap();
    let na = &n.automaton;
    let n_big = na.num_states() as u64;
    let limits = EngineLimits::default();

    let t0 = Instant::now();
    for i in k + 2..=k.min(12) + k {
        for j in 1..=k.min(6) {
            let wij = build_w_rle(i, j, n_big, k).unwrap();
            analyze_shortest_run(na, &wij, &limits).unwrap().unwrap();
        }
    }
    println!("warm batch: {:.2?}", t0.elapsed());

    let w = build_w_rle(k + 1, 1, n_big, k).unwrap();
    let t0 = Instant::now();
    let analysis = analyze_shortest_run(na, &w, &limits).unwrap().unwrap();
    println!("analysis: {:.2?} (t*={})", t0.elapsed(), analysis.t_star());

    let cap = 2 * k as u64 + 1;
    let t1 = Instant::now();
    let mut states = Vec::new();
    for l in 0..=cap {
        states.push(analysis.state_at_boundary(l, 1));
    }
    println!("sampling {} boundaries: {:.2?}", states.len(), t1.elapsed());
    let t2 = Instant::now();
    let rep = analysis.alpha_repeat_in_segment(cap + 1, 0);
    println!("alpha repeat: {:.2?} -> {rep:?}", t2.elapsed());
}
