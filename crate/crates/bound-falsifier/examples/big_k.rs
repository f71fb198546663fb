//! Times the full pipeline on a generated automaton: `big_k [k]`.

use std::time::Instant;

use bound_falsifier::falsify;
use lk_automata::build_ncw;

fn main() {
    let k: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let t0 = Instant::now();
    let a = build_ncw(k).unwrap();
    let built = t0.elapsed();
    let t1 = Instant::now();
    let verdict = falsify(&a, k).unwrap();
    let ran = t1.elapsed();
    println!("k={k}: built {} states in {built:.2?}, falsified in {ran:.2?}", a.num_states());
    println!("{verdict}");
}
