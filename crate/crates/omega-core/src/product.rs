//! Explicit product-graph engine: acceptance, witness runs, and shortest
//! accepting runs for lasso words.
//!
//! The product pairs automaton states with the structural positions of the
//! lasso (`0..prefix+cycle`, with the tail wrapping back into the cycle
//! region). Everything here materializes that product, so it is meant for
//! small automata and short words; the compressed engine in [`crate::engine`]
//! handles the large run-length-encoded instances.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automaton::{AcceptanceKind, OmegaAutomaton, StateId};
use crate::error::EngineError;
use crate::lasso::LassoWord;
use crate::run::RunDescriptor;

struct Product<'a> {
    a: &'a OmegaAutomaton,
    n: usize,
    /// Prefix length; structural positions `u..u+v` wrap back to `u`.
    u: usize,
    /// `u + v`, the number of structural positions.
    period: usize,
    /// Symbol index read *from* each structural position.
    letters: Vec<u16>,
}

impl<'a> Product<'a> {
    fn new(a: &'a OmegaAutomaton, w: &LassoWord) -> Result<Product<'a>, EngineError> {
        for sym in w.prefix().iter().chain(w.cycle().iter()) {
            if !sym.fits_alphabet(a.alphabet_k()) {
                return Err(EngineError::SymbolOutOfRange {
                    symbol: sym.to_string(),
                    agents: 2 * a.alphabet_k(),
                });
            }
        }
        let u = w.prefix_len() as usize;
        let period = u + w.cycle_len() as usize;
        let letters = (0..period).map(|s| w.at(s as u64 + 1).index() as u16).collect();
        Ok(Product { a, n: a.num_states() as usize, u, period, letters })
    }

    fn node(&self, sigma: usize, q: StateId) -> usize {
        sigma * self.n + q as usize
    }

    fn state_of(&self, node: usize) -> StateId {
        (node % self.n) as StateId
    }

    fn sigma_of(&self, node: usize) -> usize {
        node / self.n
    }

    fn next_sigma(&self, sigma: usize) -> usize {
        if sigma + 1 < self.period {
            sigma + 1
        } else {
            self.u
        }
    }

    /// Structural position of time index `t` (state after `t` letters).
    fn sigma_at(&self, t: usize) -> usize {
        if t < self.u {
            t
        } else {
            self.u + (t - self.u) % (self.period - self.u)
        }
    }

    fn num_nodes(&self) -> usize {
        self.n * self.period
    }

    fn start(&self) -> usize {
        self.node(0, self.a.initial())
    }

    fn successors_of(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        let sigma = self.sigma_of(node);
        let q = self.state_of(node);
        let next = self.next_sigma(sigma);
        self.a
            .successors_by_index(q, self.letters[sigma])
            .iter()
            .map(move |t| self.node(next, t))
    }

    /// BFS from the start node; returns reachability flags and BFS parents
    /// (`u32::MAX` for the start and unreachable nodes).
    fn reachable(&self) -> (Vec<bool>, Vec<u32>) {
        let mut reach = vec![false; self.num_nodes()];
        let mut parent = vec![u32::MAX; self.num_nodes()];
        let mut queue = VecDeque::new();
        reach[self.start()] = true;
        queue.push_back(self.start());
        while let Some(node) = queue.pop_front() {
            for succ in self.successors_of(node) {
                if !reach[succ] {
                    reach[succ] = true;
                    parent[succ] = node as u32;
                    queue.push_back(succ);
                }
            }
        }
        (reach, parent)
    }

    fn path_from_start(&self, parent: &[u32], target: usize) -> Vec<usize> {
        let mut path = vec![target];
        let mut cur = target;
        while cur != self.start() {
            cur = parent[cur] as usize;
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Strongly connected components of the reachable part. Returns the
    /// component id per node (`u32::MAX` off the reachable part) and, per
    /// component, whether it contains a cycle (size >= 2 or a self-loop).
    fn sccs(&self, reach: &[bool]) -> (Vec<u32>, Vec<bool>) {
        let n_nodes = self.num_nodes();
        let mut index = vec![u32::MAX; n_nodes];
        let mut low = vec![0u32; n_nodes];
        let mut on_stack = vec![false; n_nodes];
        let mut stack: Vec<usize> = Vec::new();
        let mut comp = vec![u32::MAX; n_nodes];
        let mut comp_cyclic: Vec<bool> = Vec::new();
        let mut next_index = 0u32;

        for root in 0..n_nodes {
            if !reach[root] || index[root] != u32::MAX {
                continue;
            }
            let mut call: Vec<(usize, Vec<usize>, usize)> =
                vec![(root, self.successors_of(root).collect(), 0)];
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while !call.is_empty() {
                let (v, child) = {
                    let frame = call.last_mut().unwrap();
                    if frame.2 < frame.1.len() {
                        frame.2 += 1;
                        (frame.0, Some(frame.1[frame.2 - 1]))
                    } else {
                        (frame.0, None)
                    }
                };
                match child {
                    Some(w) if index[w] == u32::MAX => {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        let succs = self.successors_of(w).collect();
                        call.push((w, succs, 0));
                    }
                    Some(w) => {
                        if on_stack[w] {
                            low[v] = low[v].min(index[w]);
                        }
                    }
                    None => {
                        if low[v] == index[v] {
                            let cid = comp_cyclic.len() as u32;
                            let mut size = 0usize;
                            loop {
                                let x = stack.pop().unwrap();
                                on_stack[x] = false;
                                comp[x] = cid;
                                size += 1;
                                if x == v {
                                    break;
                                }
                            }
                            let cyclic =
                                size >= 2 || self.successors_of(v).any(|s| s == v);
                            comp_cyclic.push(cyclic);
                        }
                        call.pop();
                        if let Some(frame) = call.last() {
                            let p = frame.0;
                            low[p] = low[p].min(low[v]);
                        }
                    }
                }
            }
        }
        (comp, comp_cyclic)
    }

    /// A product cycle through `n_star`, restricted to its component:
    /// node sequence for the positions *after* `n_star`, ending back at it.
    fn cycle_through(&self, n_star: usize, comp: &[u32]) -> Vec<usize> {
        let cid = comp[n_star];
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for s in self.successors_of(n_star) {
            if s == n_star {
                return vec![n_star];
            }
            if comp[s] == cid && !parent.contains_key(&s) {
                parent.insert(s, n_star);
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            for s in self.successors_of(x) {
                if s == n_star {
                    let mut rev = vec![x];
                    let mut cur = x;
                    while parent[&cur] != n_star {
                        cur = parent[&cur];
                        rev.push(cur);
                    }
                    rev.reverse();
                    rev.push(n_star);
                    return rev;
                }
                if comp[s] == cid && !parent.contains_key(&s) {
                    parent.insert(s, x);
                    queue.push_back(s);
                }
            }
        }
        unreachable!("a cyclic component contains a cycle through each node")
    }

    /// Nodes with an automaton state in alpha from which an infinite path
    /// through alpha nodes exists (greatest fixpoint).
    fn safe_nodes(&self) -> Vec<bool> {
        let mut safe: Vec<bool> = (0..self.num_nodes())
            .map(|node| self.a.is_accepting(self.state_of(node)))
            .collect();
        loop {
            let mut changed = false;
            for node in 0..self.num_nodes() {
                if safe[node] && !self.successors_of(node).any(|s| safe[s]) {
                    safe[node] = false;
                    changed = true;
                }
            }
            if !changed {
                return safe;
            }
        }
    }
}

/// Does `a` accept `w`?
pub fn accepts(a: &OmegaAutomaton, w: &LassoWord) -> Result<bool, EngineError> {
    let p = Product::new(a, w)?;
    let (reach, _) = p.reachable();
    match a.kind() {
        AcceptanceKind::Buchi => {
            let (comp, comp_cyclic) = p.sccs(&reach);
            Ok((0..p.num_nodes()).any(|node| {
                reach[node]
                    && a.is_accepting(p.state_of(node))
                    && comp[node] != u32::MAX
                    && comp_cyclic[comp[node] as usize]
            }))
        }
        AcceptanceKind::CoBuchi => {
            let safe = p.safe_nodes();
            Ok((0..p.num_nodes()).any(|node| reach[node] && safe[node]))
        }
    }
}

/// An accepting run of `a` on `w`, if one exists. The returned descriptor
/// replays cleanly through [`crate::run::validate_run`].
pub fn witness_run(
    a: &OmegaAutomaton,
    w: &LassoWord,
) -> Result<Option<RunDescriptor>, EngineError> {
    let p = Product::new(a, w)?;
    let (reach, parent) = p.reachable();
    match a.kind() {
        AcceptanceKind::Buchi => {
            let (comp, comp_cyclic) = p.sccs(&reach);
            let n_star = (0..p.num_nodes()).find(|&node| {
                reach[node]
                    && a.is_accepting(p.state_of(node))
                    && comp[node] != u32::MAX
                    && comp_cyclic[comp[node] as usize]
            });
            let Some(n_star) = n_star else { return Ok(None) };
            let stem: Vec<StateId> = p
                .path_from_start(&parent, n_star)
                .into_iter()
                .map(|node| p.state_of(node))
                .collect();
            let loop_states: Vec<StateId> = p
                .cycle_through(n_star, &comp)
                .into_iter()
                .map(|node| p.state_of(node))
                .collect();
            Ok(Some(RunDescriptor::new(stem, loop_states)))
        }
        AcceptanceKind::CoBuchi => {
            let safe = p.safe_nodes();
            let n_star = (0..p.num_nodes()).find(|&node| reach[node] && safe[node]);
            let Some(n_star) = n_star else { return Ok(None) };
            let path = p.path_from_start(&parent, n_star);
            // Walk greedily through safe nodes until a node repeats; the
            // stretch between the two visits is the loop.
            let mut walk = vec![n_star];
            let mut pos_of: HashMap<usize, usize> = HashMap::new();
            pos_of.insert(n_star, 0);
            let (i, j) = loop {
                let cur = *walk.last().unwrap();
                let next = p
                    .successors_of(cur)
                    .filter(|&s| safe[s])
                    .min()
                    .expect("safe nodes always have a safe successor");
                if let Some(&i) = pos_of.get(&next) {
                    break (i, walk.len());
                }
                pos_of.insert(next, walk.len());
                walk.push(next);
            };
            let mut stem: Vec<StateId> =
                path.iter().map(|&node| p.state_of(node)).collect();
            stem.extend(walk[1..=i].iter().map(|&node| p.state_of(node)));
            let mut loop_states: Vec<StateId> =
                walk[i + 1..j].iter().map(|&node| p.state_of(node)).collect();
            loop_states.push(p.state_of(walk[i]));
            Ok(Some(RunDescriptor::new(stem, loop_states)))
        }
    }
}

/// The canonical earliest-accepting run of a normal-form co-Buchi automaton
/// on `w`, or `None` when `a` rejects `w`.
///
/// The run enters alpha at the minimum position at which *any* accepting run
/// can be inside alpha, and stays there. Among runs doing so it is the
/// lexicographically smallest by state id, obtained by restricting each step
/// to states that can still complete (backward viability) and then taking
/// the smallest allowed successor.
pub fn shortest_accepting_run(
    a: &OmegaAutomaton,
    w: &LassoWord,
) -> Result<Option<RunDescriptor>, EngineError> {
    if a.kind() != AcceptanceKind::CoBuchi {
        return Err(EngineError::RequiresCoBuchi);
    }
    if !a.is_normal_form() {
        return Err(EngineError::RequiresNormalForm);
    }
    let p = Product::new(a, w)?;
    let safe = p.safe_nodes();

    // Forward frontier sets F_t with repeat detection: no accepting run
    // exists once (sigma, frontier) recurs without ever touching safe.
    let mut frontier: Vec<StateId> = vec![a.initial()];
    let mut history: Vec<Vec<StateId>> = vec![frontier.clone()];
    let mut seen: HashMap<(usize, Vec<StateId>), usize> = HashMap::new();
    let hit = |sigma: usize, f: &[StateId]| f.iter().any(|&q| safe[p.node(sigma, q)]);

    let mut t = 0usize;
    let t_star = loop {
        let sigma = p.sigma_at(t);
        if hit(sigma, &frontier) {
            break t;
        }
        if seen.insert((sigma, frontier.clone()), t).is_some() {
            return Ok(None);
        }
        let mut next: BTreeSet<StateId> = BTreeSet::new();
        for &q in &frontier {
            next.extend(a.successors_by_index(q, p.letters[sigma]).iter());
        }
        if next.is_empty() {
            return Ok(None);
        }
        frontier = next.into_iter().collect();
        history.push(frontier.clone());
        t += 1;
    };

    // Backward viability: thin each frontier down to the states from which
    // the safe hit at t_star is still reachable.
    let mut viable: Vec<Vec<StateId>> = vec![Vec::new(); t_star + 1];
    viable[t_star] = history[t_star]
        .iter()
        .copied()
        .filter(|&q| safe[p.node(p.sigma_at(t_star), q)])
        .collect();
    for t in (1..=t_star).rev() {
        let letter = p.letters[p.sigma_at(t - 1)];
        let next = std::mem::take(&mut viable[t]);
        viable[t - 1] = history[t - 1]
            .iter()
            .copied()
            .filter(|&q| {
                a.successors_by_index(q, letter).iter().any(|s| next.binary_search(&s).is_ok())
            })
            .collect();
        viable[t] = next;
    }

    // Greedy smallest-state pass through the viable sets...
    let mut states: Vec<StateId> = vec![a.initial()];
    for t in 1..=t_star {
        let prev = *states.last().unwrap();
        let letter = p.letters[p.sigma_at(t - 1)];
        let q = a
            .successors_by_index(prev, letter)
            .iter()
            .filter(|s| viable[t].binary_search(s).is_ok())
            .min()
            .expect("viable sets are nonempty by construction");
        states.push(q);
    }

    // ...then onward through safe nodes until (sigma, state) repeats, which
    // closes the loop (the continuation is deterministic from there).
    let mut pos_of: HashMap<(usize, StateId), usize> = HashMap::new();
    let mut t = t_star;
    pos_of.insert((p.sigma_at(t), *states.last().unwrap()), t);
    loop {
        let prev = *states.last().unwrap();
        let sigma = p.sigma_at(t);
        let next_sigma = p.next_sigma(sigma);
        let q = a
            .successors_by_index(prev, p.letters[sigma])
            .iter()
            .filter(|&s| safe[p.node(next_sigma, s)])
            .min()
            .expect("safe nodes always have a safe successor");
        t += 1;
        if let Some(&i) = pos_of.get(&(next_sigma, q)) {
            let stem = states[..=i].to_vec();
            let mut loop_states = states[i + 1..].to_vec();
            loop_states.push(q);
            return Ok(Some(RunDescriptor::new(stem, loop_states)));
        }
        pos_of.insert((next_sigma, q), t);
        states.push(q);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AutomatonBuilder;
    use crate::run::validate_run;
    use crate::symbol::{alphabet, Symbol};

    fn sym(text: &str) -> Symbol {
        text.parse().unwrap()
    }

    fn word(text: &str) -> LassoWord {
        text.parse().unwrap()
    }

    fn universal(kind: AcceptanceKind) -> OmegaAutomaton {
        let mut b = AutomatonBuilder::new(kind, 1, 1);
        b.set_default(0, 0);
        b.mark_accepting(0);
        b.build()
    }

    /// 2-state Buchi over k=1: initial loops on everything, moves to the
    /// accepting state exactly on ~1, which loops there only on ~1.
    fn buchi_needs_overlined() -> OmegaAutomaton {
        let mut b = AutomatonBuilder::new(AcceptanceKind::Buchi, 1, 2);
        b.set_default(0, 0);
        b.add_edge(0, sym("~1"), 0);
        b.add_edge(0, sym("~1"), 1);
        b.add_edge(1, sym("~1"), 1);
        b.mark_accepting(1);
        b.build()
    }

    #[test]
    fn universal_accepts_anything() {
        for kind in [AcceptanceKind::Buchi, AcceptanceKind::CoBuchi] {
            let a = universal(kind);
            for text in ["| 1", "1 ~1 | 2 ~2", "~2 | 1 1 1"] {
                assert_eq!(accepts(&a, &word(text)), Ok(true), "{kind} on {text}");
            }
        }
    }

    #[test]
    fn empty_alpha_buchi_rejects_everything() {
        let mut b = AutomatonBuilder::new(AcceptanceKind::Buchi, 1, 1);
        b.set_default(0, 0);
        let a = b.build();
        for text in ["| 1", "1 ~1 | 2 ~2"] {
            assert_eq!(accepts(&a, &word(text)), Ok(false));
        }
    }

    #[test]
    fn buchi_distinguishes_cycle_content() {
        let a = buchi_needs_overlined();
        assert_eq!(accepts(&a, &word("1 | ~1")), Ok(true));
        assert_eq!(accepts(&a, &word("~1 | 1")), Ok(false));
        assert_eq!(accepts(&a, &word("| 1 ~1")), Ok(false), "state 1 dies on plain 1");
    }

    #[test]
    fn rejects_symbol_outside_alphabet() {
        let a = universal(AcceptanceKind::Buchi);
        assert!(matches!(
            accepts(&a, &word("| 3")),
            Err(EngineError::SymbolOutOfRange { .. })
        ));
    }

    #[test]
    fn witness_matches_accepts_and_validates() {
        let a = buchi_needs_overlined();
        for text in ["1 | ~1", "~1 | 1", "| ~1", "| 1 ~1", "1 1 | ~1 ~1"] {
            let w = word(text);
            let acc = accepts(&a, &w).unwrap();
            let run = witness_run(&a, &w).unwrap();
            assert_eq!(run.is_some(), acc, "on {text}");
            if let Some(run) = run {
                assert_eq!(validate_run(&a, &w, &run), Ok(()), "on {text}");
            }
        }
    }

    #[test]
    fn universal_witness_is_the_self_loop() {
        let a = universal(AcceptanceKind::Buchi);
        let w = word("1 | ~2");
        let run = witness_run(&a, &w).unwrap().unwrap();
        assert!(run.stem.iter().all(|&q| q == 0));
        assert!(run.loop_states.iter().all(|&q| q == 0));
        assert_eq!(validate_run(&a, &w, &run), Ok(()));
    }

    #[test]
    fn cobuchi_witness_validates() {
        // Initial state loops on everything (not alpha), alpha state 1 is
        // entered on ~1 and survives only on plain 1.
        let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, 1, 2);
        b.set_default(0, 0);
        b.add_edge(0, sym("~1"), 0);
        b.add_edge(0, sym("~1"), 1);
        b.add_edge(1, sym("1"), 1);
        b.mark_accepting(1);
        let a = b.build();
        let w = word("~1 | 1");
        assert_eq!(accepts(&a, &w), Ok(true));
        let run = witness_run(&a, &w).unwrap().unwrap();
        assert_eq!(validate_run(&a, &w, &run), Ok(()));
        assert_eq!(accepts(&a, &word("| ~1")), Ok(false), "alpha dies on ~1 forever");
    }

    #[test]
    fn cobuchi_transient_alpha_is_not_enough() {
        // Alpha state 1 is visited on every other letter but cannot stay.
        let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, 1, 2);
        b.add_edge(0, sym("1"), 1);
        b.add_edge(1, sym("1"), 0);
        b.mark_accepting(1);
        let a = b.build();
        assert_eq!(accepts(&a, &word("| 1")), Ok(false));
        assert_eq!(witness_run(&a, &word("| 1")).unwrap(), None);
    }

    fn two_entry_normal() -> OmegaAutomaton {
        // On (1)^w: branch 0->1->2 enters alpha at position 2, branch
        // 0->3->4->5->6->7 enters alpha at position 5; both continue forever.
        let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, 1, 8);
        let one = sym("1");
        b.add_edge(0, one, 1);
        b.add_edge(0, one, 3);
        b.add_edge(1, one, 2);
        b.add_edge(2, one, 2);
        b.add_edge(3, one, 4);
        b.add_edge(4, one, 5);
        b.add_edge(5, one, 6);
        b.add_edge(6, one, 7);
        b.add_edge(7, one, 7);
        b.mark_accepting(2);
        b.mark_accepting(7);
        b.build()
    }

    #[test]
    fn shortest_run_enters_alpha_at_the_earliest_position() {
        let a = two_entry_normal();
        assert!(a.is_normal_form());
        let w = word("| 1");
        let run = shortest_accepting_run(&a, &w).unwrap().unwrap();
        assert_eq!(validate_run(&a, &w, &run), Ok(()));
        for t in 0..10 {
            let in_alpha = a.is_accepting(run.state_at(t));
            assert_eq!(in_alpha, t >= 2, "position {t}");
        }
        assert_eq!(run.stem, vec![0, 1, 2]);
        assert_eq!(run.loop_states, vec![2]);
    }

    #[test]
    fn shortest_run_is_none_iff_rejected() {
        let a = two_entry_normal();
        // On ~1 every branch dies immediately.
        assert_eq!(shortest_accepting_run(&a, &word("| ~1")).unwrap(), None);
        assert_eq!(accepts(&a, &word("| ~1")), Ok(false));
    }

    #[test]
    fn shortest_run_checks_preconditions() {
        let buchi = universal(AcceptanceKind::Buchi);
        assert_eq!(
            shortest_accepting_run(&buchi, &word("| 1")),
            Err(EngineError::RequiresCoBuchi)
        );
        let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, 1, 2);
        b.mark_accepting(0);
        b.set_default(0, 1);
        b.set_default(1, 0);
        let leaky = b.build();
        assert_eq!(
            shortest_accepting_run(&leaky, &word("| 1")),
            Err(EngineError::RequiresNormalForm)
        );
    }

    #[test]
    fn shortest_run_on_deterministic_automaton_is_the_unique_run() {
        // Deterministic normal-form machine: count two 1s then stay in alpha.
        let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, 1, 3);
        let one = sym("1");
        b.add_edge(0, one, 1);
        b.add_edge(1, one, 2);
        b.add_edge(2, one, 2);
        b.mark_accepting(2);
        let a = b.build();
        let w = word("1 | 1");
        let run = shortest_accepting_run(&a, &w).unwrap().unwrap();
        assert_eq!(run.stem, vec![0, 1, 2]);
        assert_eq!(run.loop_states, vec![2]);
    }

    #[test]
    fn shortest_run_universal_enters_alpha_at_zero() {
        let a = universal(AcceptanceKind::CoBuchi);
        let w = word("1 ~2 | 2");
        let run = shortest_accepting_run(&a, &w).unwrap().unwrap();
        assert!(a.is_accepting(run.state_at(0)));
        assert_eq!(validate_run(&a, &w, &run), Ok(()));
    }

    #[test]
    fn acceptance_is_invariant_under_unrolling_small_sample() {
        let a = buchi_needs_overlined();
        for text in ["1 | ~1 1", "| ~1", "~1 | 1 ~1"] {
            let w = word(text);
            let mut unrolled_prefix = w.prefix().to_vec();
            unrolled_prefix.extend_from_slice(w.cycle());
            let unrolled = LassoWord::new(unrolled_prefix, w.cycle().to_vec());
            assert_eq!(
                accepts(&a, &w).unwrap(),
                accepts(&a, &unrolled).unwrap(),
                "unroll of {text}"
            );
        }
    }

    #[test]
    fn exhaustive_tiny_cross_check_buchi_vs_cobuchi_universality() {
        // On a complete deterministic 1-state automaton both conditions
        // agree on every word; sanity-check the engines on all 1-letter
        // cycles with empty prefix.
        for kind in [AcceptanceKind::Buchi, AcceptanceKind::CoBuchi] {
            let a = universal(kind);
            for s in alphabet(1) {
                let w = LassoWord::periodic(vec![s]);
                assert_eq!(accepts(&a, &w), Ok(true));
            }
        }
    }
}
