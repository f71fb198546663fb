//! Compressed-word engine for co-Buchi automata.
//!
//! The probe words analyzed elsewhere repeat single symbols millions of
//! times, so this engine never walks letters one by one. Within a segment
//! `symbol x count` every evolving object — the reachable frontier, the
//! safe-continuation sets, the backward viability sets, and the single
//! greedy run state — is driven by a deterministic step map, so its
//! trajectory is eventually periodic and can be fast-forwarded after cycle
//! detection. The engine computes, per word:
//!
//! - acceptance (for any co-Buchi automaton),
//! - the earliest position `t*` at which an accepting run can be inside
//!   alpha (normal form only), found by intersecting forward frontiers with
//!   backward safe sets,
//! - the canonical earliest/lexicographically-smallest run, sampled at the
//!   segment boundaries of the cycle (and fully materialized when small).
//!
//! The canonical run here follows the same recurrence as
//! [`crate::product::shortest_accepting_run`]: restrict each step to states
//! that can still complete, then take the smallest state id. On words small
//! enough for both engines the results are identical.

use std::collections::HashMap;

use crate::automaton::{AcceptanceKind, OmegaAutomaton, StateId, Successors};
use crate::error::EngineError;
use crate::rle::RleWord;
use crate::run::RunDescriptor;

/// Resource caps for the engine. Exceeding any of them aborts the analysis
/// with [`EngineError::BudgetExceeded`] instead of silently degrading.
#[derive(Debug, Clone)]
pub struct EngineLimits {
    /// Max distinct sets recorded per iterate table before giving up on
    /// finding its period.
    pub table_cap: usize,
    /// Max residue window scanned during a segment hit test.
    pub window_cap: u64,
    /// Max stem+loop entries for materializing a full run descriptor;
    /// longer runs are reported through boundary samples only.
    pub materialize_cap: u64,
    /// Max cycle laps for which per-lap tables and samples are kept.
    pub max_sample_laps: u64,
    /// Hard cap on explicit fast-forward steps, as a loop guard.
    pub step_cap: u64,
}

impl Default for EngineLimits {
    fn default() -> EngineLimits {
        EngineLimits {
            table_cap: 1 << 16,
            window_cap: 1 << 20,
            materialize_cap: 1 << 20,
            max_sample_laps: 1 << 12,
            step_cap: 1 << 30,
        }
    }
}

type Set = Vec<StateId>;

fn set_contains(set: &[StateId], q: StateId) -> bool {
    set.binary_search(&q).is_ok()
}

fn intersects(a: &[StateId], b: &[StateId]) -> bool {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().any(|&q| set_contains(large, q))
}

fn intersect(a: &[StateId], b: &[StateId]) -> Set {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().copied().filter(|&q| set_contains(large, q)).collect()
}

fn merge2(a: &[StateId], b: &[StateId]) -> Set {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let next = if a[i] <= b[j] {
            if a[i] == b[j] {
                j += 1;
            }
            i += 1;
            a[i - 1]
        } else {
            j += 1;
            b[j - 1]
        };
        if out.last() != Some(&next) {
            out.push(next);
        }
    }
    for &q in &a[i..] {
        if out.last() != Some(&q) {
            out.push(q);
        }
    }
    for &q in &b[j..] {
        if out.last() != Some(&q) {
            out.push(q);
        }
    }
    out
}

/// One application of the transition relation to a sorted state set.
/// Successor ids mostly arrive in ascending order here (the generated
/// automata are laid out that way), so out-of-order stragglers are merged
/// separately instead of sorting the whole result every step.
fn step_set(a: &OmegaAutomaton, set: &[StateId], sym: u16) -> Set {
    let mut belt: Set = Vec::with_capacity(set.len());
    let mut stray: Set = Vec::new();
    let mut slices: Vec<&[StateId]> = Vec::new();
    for &q in set {
        match a.successors_by_index(q, sym) {
            Successors::None => {}
            Successors::One(t) => match belt.last() {
                Some(&l) if l == t => {}
                Some(&l) if l > t => stray.push(t),
                _ => belt.push(t),
            },
            Successors::Many(s) => slices.push(s),
        }
    }
    if stray.is_empty() && slices.is_empty() {
        return belt;
    }
    stray.sort_unstable();
    stray.dedup();
    let mut acc = merge2(&belt, &stray);
    for s in slices {
        acc = merge2(&acc, s);
    }
    acc
}

/// `{q in base : delta(q, sym) meets target}` — the backward step used for
/// both safe sets (base = alpha) and viability sets (base = frontier).
fn filter_pre(a: &OmegaAutomaton, base: &[StateId], sym: u16, target: &[StateId]) -> Set {
    base.iter()
        .copied()
        .filter(|&q| a.successors_by_index(q, sym).iter().any(|t| set_contains(target, t)))
        .collect()
}

fn greedy_step(a: &OmegaAutomaton, q: StateId, sym: u16, allowed: &Set) -> Option<StateId> {
    a.successors_by_index(q, sym).iter().filter(|&t| set_contains(allowed, t)).min()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The orbit of a set under a deterministic step map, recorded until the
/// index `needed` is covered or the orbit repeats. Indices beyond the
/// recorded entries resolve through the detected period.
struct IterateTable {
    items: Vec<Set>,
    preperiod: usize,
    period: usize,
    /// True when a repetition was found, so any index is resolvable. False
    /// means the table is a plain explicit record of indices `0..len`.
    complete: bool,
}

impl IterateTable {
    fn get(&self, idx: u64) -> &Set {
        if !self.complete {
            return &self.items[idx as usize];
        }
        if (idx as usize) < self.preperiod {
            &self.items[idx as usize]
        } else {
            let off = (idx - self.preperiod as u64) % self.period as u64;
            &self.items[self.preperiod + off as usize]
        }
    }
}

fn build_table(
    init: Set,
    needed: u64,
    cap: usize,
    mut step: impl FnMut(&Set) -> Set,
) -> Result<IterateTable, EngineError> {
    let mut items = vec![init];
    // Tiny segments cannot amortize period detection: record them
    // explicitly and skip the orbit map.
    if needed <= 2 {
        while items.len() as u64 <= needed {
            let next = step(items.last().unwrap());
            items.push(next);
        }
        return Ok(IterateTable { preperiod: items.len(), period: 1, complete: false, items });
    }
    let mut seen: HashMap<Set, usize> = HashMap::new();
    seen.insert(items[0].clone(), 0);
    loop {
        if items.len() as u64 > needed {
            return Ok(IterateTable { preperiod: items.len(), period: 1, complete: false, items });
        }
        if items.len() > cap {
            return Err(EngineError::BudgetExceeded(format!(
                "iterate table grew past {cap} distinct sets"
            )));
        }
        let next = step(items.last().unwrap());
        if let Some(&at) = seen.get(&next) {
            let preperiod = at;
            let period = items.len() - at;
            return Ok(IterateTable { preperiod, period, complete: true, items });
        }
        seen.insert(next.clone(), items.len());
        items.push(next);
    }
}

/// Backward viability sets through one segment, indexed by offset from the
/// segment start. Entry `m` answers: which states of the frontier at offset
/// `m` can still reach the target set at the segment end. Unlike
/// [`IterateTable`] the step map here also depends on the frontier at the
/// matching offset, so the repeat detection keys on the frontier phase and
/// the low offsets (where the frontier table is not periodic yet) get an
/// explicit tail.
struct OffsetTable {
    /// Indexed by distance `d` from the segment end: entry `d` is the set
    /// at offset `count - d`.
    items: Vec<Set>,
    preperiod: usize,
    period: usize,
    complete: bool,
    /// Explicit values for offsets `m < tail.len()`.
    tail: Vec<Set>,
    count: u64,
}

impl OffsetTable {
    fn get_b(&self, m: u64) -> &Set {
        if m < self.tail.len() as u64 {
            return &self.tail[m as usize];
        }
        let d = self.count - m;
        if !self.complete {
            return &self.items[d as usize];
        }
        if (d as usize) < self.preperiod {
            &self.items[d as usize]
        } else {
            let off = (d - self.preperiod as u64) % self.period as u64;
            &self.items[self.preperiod + off as usize]
        }
    }

    fn phase(&self, m: u64) -> Option<u64> {
        if !self.complete || m < self.tail.len() as u64 {
            return None;
        }
        let d = self.count - m;
        if (d as usize) < self.preperiod {
            None
        } else {
            Some((d - self.preperiod as u64) % self.period as u64)
        }
    }

    /// Largest offset with a valid phase (jumps must not cross it).
    fn horizon(&self) -> u64 {
        if !self.complete {
            0
        } else {
            self.count.saturating_sub(self.preperiod as u64)
        }
    }
}

fn build_offset_table(
    a: &OmegaAutomaton,
    ft: &IterateTable,
    sym: u16,
    count: u64,
    target: Set,
    cap: usize,
) -> Result<OffsetTable, EngineError> {
    let mut items = vec![target];
    let mut seen: HashMap<(Set, u64), usize> = HashMap::new();
    let (preperiod, period);
    loop {
        let d = items.len() as u64;
        if d > count {
            return Ok(OffsetTable {
                preperiod: items.len(),
                period: 1,
                complete: false,
                tail: Vec::new(),
                items,
                count,
            });
        }
        if items.len() > cap {
            return Err(EngineError::BudgetExceeded(format!(
                "viability table grew past {cap} distinct sets"
            )));
        }
        let m = count - d;
        let next = filter_pre(a, ft.get(m), sym, items.last().unwrap());
        items.push(next.clone());
        if ft.complete && m >= ft.preperiod as u64 {
            let phase = (m - ft.preperiod as u64) % ft.period as u64;
            if let Some(&d1) = seen.get(&(next.clone(), phase)) {
                preperiod = d1;
                period = items.len() - 1 - d1;
                break;
            }
            seen.insert((next, phase), items.len() - 1);
        }
    }
    // Offsets below the frontier table's preperiod break the periodicity;
    // walk them explicitly, seeded from the periodic part.
    let head = (ft.preperiod as u64).min(count);
    let mut tail = Vec::new();
    if head > 0 {
        let d_seed = count - head;
        let seed = if (d_seed as usize) < preperiod {
            items[d_seed as usize].clone()
        } else {
            let off = (d_seed - preperiod as u64) % period as u64;
            items[preperiod + off as usize].clone()
        };
        let mut cur = seed;
        let mut rev: Vec<Set> = Vec::with_capacity(head as usize);
        for m in (0..head).rev() {
            cur = filter_pre(a, ft.get(m), sym, &cur);
            rev.push(cur.clone());
        }
        rev.reverse();
        tail = rev;
    }
    Ok(OffsetTable { items, preperiod, period, complete: true, tail, count })
}

/// The per-offset constraint the greedy run must stay inside: backward
/// viability before `t*`, safe continuation after.
enum Constraint<'t> {
    Viable(&'t OffsetTable),
    Safe { table: &'t IterateTable, count: u64 },
}

impl Constraint<'_> {
    fn at(&self, m: u64) -> &Set {
        match self {
            Constraint::Viable(t) => t.get_b(m),
            Constraint::Safe { table, count } => table.get(count - m),
        }
    }

    fn phase(&self, m: u64) -> Option<u64> {
        match self {
            Constraint::Viable(t) => t.phase(m),
            Constraint::Safe { table, count } => {
                if !table.complete {
                    return None;
                }
                let d = count - m;
                if (d as usize) < table.preperiod {
                    None
                } else {
                    Some((d - table.preperiod as u64) % table.period as u64)
                }
            }
        }
    }

    fn horizon(&self) -> u64 {
        match self {
            Constraint::Viable(t) => t.horizon(),
            Constraint::Safe { table, count } => {
                if !table.complete {
                    0
                } else {
                    count.saturating_sub(table.preperiod as u64)
                }
            }
        }
    }
}

/// Advances the greedy run state from `from` to `to` within one segment,
/// fast-forwarding once the (state, constraint-phase) pair repeats.
fn ff_through(
    a: &OmegaAutomaton,
    sym: u16,
    from: u64,
    to: u64,
    start: StateId,
    cons: &Constraint<'_>,
    steps: &mut u64,
    step_cap: u64,
) -> Result<StateId, EngineError> {
    let mut q = start;
    let mut m = from;
    let mut seen: HashMap<(StateId, u64), u64> = HashMap::new();
    while m < to {
        if let Some(phase) = cons.phase(m + 1) {
            if let Some(&m1) = seen.get(&(q, phase)) {
                let delta = m - m1;
                let h = cons.horizon();
                let by_end = (to - m) / delta;
                let by_h = if h > m { (h - m) / delta } else { 0 };
                let jump = by_end.min(by_h) * delta;
                if jump > 0 {
                    m += jump;
                    seen.clear();
                    continue;
                }
            } else {
                seen.insert((q, phase), m);
            }
        }
        q = greedy_step(a, q, sym, cons.at(m + 1)).ok_or_else(|| {
            EngineError::InvalidQuery("greedy run ran out of viable successors".into())
        })?;
        m += 1;
        *steps += 1;
        if *steps > step_cap {
            return Err(EngineError::BudgetExceeded("fast-forward step cap exceeded".into()));
        }
    }
    Ok(q)
}

/// First offset `o` in `[0, count)` at which the forward frontier meets the
/// backward safe set, scanning explicit table heads and one residue window
/// of the combined period for the doubly-periodic middle stretch.
fn first_hit_in_segment(
    ft: &IterateTable,
    st: &IterateTable,
    count: u64,
    window_cap: u64,
) -> Result<Option<u64>, EngineError> {
    let hit = |o: u64| intersects(ft.get(o), st.get(count - o));
    if !ft.complete || !st.complete {
        // At least one table is an explicit record of the whole segment.
        return Ok((0..count).find(|&o| hit(o)));
    }
    let fpre = ft.preperiod as u64;
    let spre = st.preperiod as u64;
    let a_end = fpre.min(count);
    if let Some(o) = (0..a_end).find(|&o| hit(o)) {
        return Ok(Some(o));
    }
    if count >= fpre + spre {
        let window = lcm(ft.period as u64, st.period as u64);
        if window > window_cap {
            return Err(EngineError::BudgetExceeded(format!(
                "hit-test window {window} exceeds cap {window_cap}"
            )));
        }
        let zone_end = count - spre; // inclusive
        let scan_end = (fpre + window - 1).min(zone_end);
        if let Some(o) = (fpre..=scan_end).find(|&o| hit(o)) {
            return Ok(Some(o));
        }
    }
    let c_start = (count + 1).saturating_sub(spre).max(a_end);
    Ok((c_start..count).find(|&o| hit(o)))
}

/// Location of the earliest safe hit.
#[derive(Debug, Clone, Copy)]
struct Hit {
    in_prefix: bool,
    seg: usize,
    lap: u64,
    offset: u64,
    t: u64,
}

struct SearchOut {
    hit: Option<Hit>,
    prefix_tables: Vec<IterateTable>,
    lap_tables: Vec<Vec<IterateTable>>,
}

struct EngineCore<'a> {
    a: &'a OmegaAutomaton,
    alpha: Set,
    pre_syms: Vec<u16>,
    pre_counts: Vec<u64>,
    cyc_syms: Vec<u16>,
    cyc_counts: Vec<u64>,
    u: u64,
    v: u64,
    boundary_offsets: Vec<u64>,
    limits: EngineLimits,
    safe_tables: Vec<IterateTable>,
    pre_safe_tables: Vec<IterateTable>,
}

impl<'a> EngineCore<'a> {
    fn new(
        a: &'a OmegaAutomaton,
        w: &RleWord,
        limits: EngineLimits,
    ) -> Result<EngineCore<'a>, EngineError> {
        if a.kind() != AcceptanceKind::CoBuchi {
            return Err(EngineError::RequiresCoBuchi);
        }
        if w.max_agent() > 2 * a.alphabet_k() {
            let bad = w
                .prefix()
                .iter()
                .chain(w.cycle().iter())
                .find(|s| !s.symbol.fits_alphabet(a.alphabet_k()))
                .unwrap();
            return Err(EngineError::SymbolOutOfRange {
                symbol: bad.symbol.to_string(),
                agents: 2 * a.alphabet_k(),
            });
        }
        let alpha: Set = a.accepting_states();
        let pre_syms: Vec<u16> = w.prefix().iter().map(|s| s.symbol.index() as u16).collect();
        let pre_counts: Vec<u64> = w.prefix().iter().map(|s| s.count).collect();
        let cyc_syms: Vec<u16> = w.cycle().iter().map(|s| s.symbol.index() as u16).collect();
        let cyc_counts: Vec<u64> = w.cycle().iter().map(|s| s.count).collect();
        let mut boundary_offsets = Vec::with_capacity(cyc_counts.len());
        let mut off = 0u64;
        for &c in &cyc_counts {
            boundary_offsets.push(off);
            off += c;
        }

        let mut core = EngineCore {
            a,
            alpha,
            pre_syms,
            pre_counts,
            cyc_syms,
            cyc_counts,
            u: w.prefix_len(),
            v: w.cycle_len(),
            boundary_offsets,
            limits,
            safe_tables: Vec::new(),
            pre_safe_tables: Vec::new(),
        };
        core.compute_safe()?;
        Ok(core)
    }

    /// Greatest fixpoint of "stays inside alpha and survives" over the
    /// cycle, then backward tables for the interior of every segment
    /// (cycle and prefix). Sweeps backward around the cycle until a full
    /// lap changes nothing.
    fn compute_safe(&mut self) -> Result<(), EngineError> {
        let r = self.cyc_syms.len();
        let mut bounds: Vec<Set> = vec![self.alpha.clone(); r];
        loop {
            let mut changed = false;
            for j in (0..r).rev() {
                let target = bounds[(j + 1) % r].clone();
                let table = self.alpha_table(self.cyc_syms[j], self.cyc_counts[j], target)?;
                let y = table.get(self.cyc_counts[j]);
                if *y != bounds[j] {
                    bounds[j] = y.clone();
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.safe_tables = (0..r)
            .map(|j| {
                self.alpha_table(self.cyc_syms[j], self.cyc_counts[j], bounds[(j + 1) % r].clone())
            })
            .collect::<Result<_, _>>()?;
        let mut end_set = bounds[0].clone();
        let mut rev = Vec::with_capacity(self.pre_syms.len());
        for i in (0..self.pre_syms.len()).rev() {
            let t = self.alpha_table(self.pre_syms[i], self.pre_counts[i], end_set.clone())?;
            end_set = t.get(self.pre_counts[i]).clone();
            rev.push(t);
        }
        rev.reverse();
        self.pre_safe_tables = rev;
        Ok(())
    }

    fn alpha_table(&self, sym: u16, count: u64, target: Set) -> Result<IterateTable, EngineError> {
        let a = self.a;
        let alpha = &self.alpha;
        build_table(target, count, self.limits.table_cap, |s| filter_pre(a, alpha, sym, s))
    }

    fn forward_table(&self, init: Set, sym: u16, count: u64) -> Result<IterateTable, EngineError> {
        let a = self.a;
        build_table(init, count, self.limits.table_cap, |s| step_set(a, s, sym))
    }

    /// Forward frontier search for the earliest safe hit. Stores the
    /// per-segment frontier tables when `store` is set (up to the sampling
    /// cap) so the extraction passes can reuse them.
    fn search(&self, store: bool) -> Result<SearchOut, EngineError> {
        let mut f: Set = vec![self.a.initial()];
        let mut t_base = 0u64;
        let mut prefix_tables = Vec::new();
        for i in 0..self.pre_syms.len() {
            let c = self.pre_counts[i];
            let ft = self.forward_table(f.clone(), self.pre_syms[i], c)?;
            if let Some(o) =
                first_hit_in_segment(&ft, &self.pre_safe_tables[i], c, self.limits.window_cap)?
            {
                if store {
                    prefix_tables.push(ft);
                }
                return Ok(SearchOut {
                    hit: Some(Hit { in_prefix: true, seg: i, lap: 0, offset: o, t: t_base + o }),
                    prefix_tables,
                    lap_tables: Vec::new(),
                });
            }
            f = ft.get(c).clone();
            t_base += c;
            if store {
                prefix_tables.push(ft);
            }
        }
        let mut lap_tables: Vec<Vec<IterateTable>> = Vec::new();
        let mut seen: HashMap<Set, u64> = HashMap::new();
        let mut lap = 0u64;
        loop {
            if seen.insert(f.clone(), lap).is_some() {
                return Ok(SearchOut { hit: None, prefix_tables, lap_tables });
            }
            let keep = store && lap < self.limits.max_sample_laps;
            let mut tabs = Vec::new();
            for j in 0..self.cyc_syms.len() {
                let c = self.cyc_counts[j];
                let ft = self.forward_table(f.clone(), self.cyc_syms[j], c)?;
                if let Some(o) =
                    first_hit_in_segment(&ft, &self.safe_tables[j], c, self.limits.window_cap)?
                {
                    let hit = Hit { in_prefix: false, seg: j, lap, offset: o, t: t_base + o };
                    if keep {
                        tabs.push(ft);
                        lap_tables.push(tabs);
                    }
                    return Ok(SearchOut { hit: Some(hit), prefix_tables, lap_tables });
                }
                f = ft.get(c).clone();
                t_base += c;
                if keep {
                    tabs.push(ft);
                }
            }
            if keep {
                lap_tables.push(tabs);
            }
            lap += 1;
        }
    }

    fn safe_constraint(&self, seg: usize) -> Constraint<'_> {
        Constraint::Safe { table: &self.safe_tables[seg], count: self.cyc_counts[seg] }
    }
}

/// The canonical earliest-accepting run of a normal co-Buchi automaton on a
/// compressed word, reported through segment-boundary samples.
pub struct ShortestRunAnalysis<'a> {
    core: EngineCore<'a>,
    t_star: u64,
    /// `samples[lap][j]` = run state at position `prefix + lap*cycle +
    /// boundary_offsets[j]`. The last recorded lap may be partial.
    samples: Vec<Vec<StateId>>,
    /// `(first_lap, period_laps)`: from `first_lap` on, the run repeats
    /// every `period_laps` laps (all inside alpha).
    loop_info: Option<(u64, u64)>,
    run: Option<RunDescriptor>,
}

impl<'a> ShortestRunAnalysis<'a> {
    /// Earliest position at which an accepting run can be inside alpha;
    /// the canonical run is inside alpha exactly from here on.
    pub fn t_star(&self) -> u64 {
        self.t_star
    }

    pub fn prefix_len(&self) -> u64 {
        self.core.u
    }

    pub fn lap_len(&self) -> u64 {
        self.core.v
    }

    pub fn num_boundaries(&self) -> usize {
        self.core.boundary_offsets.len()
    }

    pub fn boundary_offsets(&self) -> &[u64] {
        &self.core.boundary_offsets
    }

    /// Position index of cycle boundary `j` in lap `lap` (the state there
    /// is the state after that many letters).
    pub fn boundary_position(&self, lap: u64, j: usize) -> u64 {
        self.core.u + lap * self.core.v + self.core.boundary_offsets[j]
    }

    pub fn sampled_laps(&self) -> u64 {
        self.samples.len() as u64
    }

    pub fn loop_info(&self) -> Option<(u64, u64)> {
        self.loop_info
    }

    /// The fully materialized run, when the word was small enough.
    pub fn run(&self) -> Option<&RunDescriptor> {
        self.run.as_ref()
    }

    /// Canonical run state at cycle boundary `j` of `lap`. Laps beyond the
    /// sampled range resolve through the detected lap loop.
    pub fn state_at_boundary(&self, lap: u64, j: usize) -> Option<StateId> {
        let lap = if lap < self.samples.len() as u64 {
            lap
        } else {
            let (first, period) = self.loop_info?;
            if lap < first {
                return None;
            }
            first + (lap - first) % period
        };
        self.samples.get(lap as usize)?.get(j).copied()
    }

    /// Offsets `(x, y)` within cycle segment `seg` of `lap` (relative to
    /// the segment start) at which the canonical run revisits a state: the
    /// run state after `x` letters of the segment equals the state after
    /// `y`. Requires the whole segment to lie at or after `t*`, so the
    /// revisit is a loop inside alpha; it exists whenever the segment is
    /// longer than the number of accepting states.
    pub fn alpha_repeat_in_segment(
        &self,
        lap: u64,
        seg: usize,
    ) -> Result<(u64, u64), EngineError> {
        let q0 = self.state_at_boundary(lap, seg).ok_or_else(|| {
            EngineError::InvalidQuery(format!("lap {lap} is beyond the sampled range"))
        })?;
        if self.boundary_position(lap, seg) < self.t_star {
            return Err(EngineError::InvalidQuery(
                "segment starts before the run enters alpha".into(),
            ));
        }
        let c = self.core.cyc_counts[seg];
        let sym = self.core.cyc_syms[seg];
        let cons = self.core.safe_constraint(seg);
        let mut visited: HashMap<StateId, u64> = HashMap::new();
        visited.insert(q0, 0);
        let mut q = q0;
        for m in 1..=c {
            q = greedy_step(self.core.a, q, sym, cons.at(m)).ok_or_else(|| {
                EngineError::InvalidQuery("greedy run ran out of viable successors".into())
            })?;
            if let Some(&x) = visited.get(&q) {
                return Ok((x, m));
            }
            visited.insert(q, m);
        }
        Err(EngineError::InvalidQuery(
            "no state revisit within the segment (segment shorter than alpha)".into(),
        ))
    }
}

/// Does the co-Buchi automaton `a` (any, not necessarily normal) accept the
/// compressed word `w`?
pub fn accepts_rle(a: &OmegaAutomaton, w: &RleWord) -> Result<bool, EngineError> {
    accepts_rle_with(a, w, &EngineLimits::default())
}

pub fn accepts_rle_with(
    a: &OmegaAutomaton,
    w: &RleWord,
    limits: &EngineLimits,
) -> Result<bool, EngineError> {
    let core = EngineCore::new(a, w, limits.clone())?;
    Ok(core.search(false)?.hit.is_some())
}

/// Runs the full earliest-run analysis. `Ok(None)` means `a` rejects `w`.
pub fn analyze_shortest_run<'a>(
    a: &'a OmegaAutomaton,
    w: &RleWord,
    limits: &EngineLimits,
) -> Result<Option<ShortestRunAnalysis<'a>>, EngineError> {
    if a.kind() != AcceptanceKind::CoBuchi {
        return Err(EngineError::RequiresCoBuchi);
    }
    if !a.is_normal_form() {
        return Err(EngineError::RequiresNormalForm);
    }
    let core = EngineCore::new(a, w, limits.clone())?;
    let out = core.search(true)?;
    let Some(hit) = out.hit else {
        return Ok(None);
    };
    if !hit.in_prefix && hit.lap >= out.lap_tables.len() as u64 {
        return Err(EngineError::BudgetExceeded(format!(
            "run enters alpha in lap {}, beyond the sampling cap of {}",
            hit.lap, core.limits.max_sample_laps
        )));
    }

    // Backward viability pass: thin each stored frontier table down to the
    // states that still reach the safe hit, walking segments backward from
    // the hit to position 0. First enumerate the legs (one per stored
    // segment table) from the word start to the hit.
    struct Leg<'t> {
        in_prefix: bool,
        seg: usize,
        lap: u64,
        ft: &'t IterateTable,
        count: u64,
    }
    let mut legs: Vec<Leg<'_>> = Vec::new();
    for (i, ft) in out.prefix_tables.iter().enumerate() {
        let full = core.pre_counts[i];
        let count = if hit.in_prefix && hit.seg == i { hit.offset } else { full };
        legs.push(Leg { in_prefix: true, seg: i, lap: 0, ft, count });
        if hit.in_prefix && hit.seg == i {
            break;
        }
    }
    if !hit.in_prefix {
        'outer: for (lap, tabs) in out.lap_tables.iter().enumerate() {
            for (j, ft) in tabs.iter().enumerate() {
                let full = core.cyc_counts[j];
                let last = lap as u64 == hit.lap && j == hit.seg;
                let count = if last { hit.offset } else { full };
                legs.push(Leg { in_prefix: false, seg: j, lap: lap as u64, ft, count });
                if last {
                    break 'outer;
                }
            }
        }
    }

    let last_leg = legs.last().expect("the hit leg is always present");
    let f_hit = last_leg.ft.get(hit.offset);
    let safe_hit: &Set = if hit.in_prefix {
        core.pre_safe_tables[hit.seg].get(core.pre_counts[hit.seg] - hit.offset)
    } else {
        core.safe_tables[hit.seg].get(core.cyc_counts[hit.seg] - hit.offset)
    };
    let mut target = intersect(f_hit, safe_hit);
    debug_assert!(!target.is_empty(), "the hit test found a nonempty intersection");

    let mut b_tables: Vec<OffsetTable> = Vec::with_capacity(legs.len());
    for leg in legs.iter().rev() {
        let sym = if leg.in_prefix { core.pre_syms[leg.seg] } else { core.cyc_syms[leg.seg] };
        let bt = build_offset_table(a, leg.ft, sym, leg.count, target, core.limits.table_cap)?;
        target = bt.get_b(0).clone();
        b_tables.push(bt);
    }
    b_tables.reverse();
    debug_assert_eq!(target, vec![a.initial()], "viability must close at the initial state");

    // Greedy forward pass: stem through the viability tables up to the hit,
    // then the alpha phase through the safe tables, sampling every cycle
    // boundary and stopping once a lap-boundary state repeats.
    let mut steps = 0u64;
    let mut q = a.initial();
    let mut samples: Vec<Vec<StateId>> = Vec::new();
    let mut loop_info: Option<(u64, u64)> = None;
    let mut lap_starts: HashMap<StateId, u64> = HashMap::new();

    for (li, leg) in legs.iter().enumerate() {
        let sym = if leg.in_prefix { core.pre_syms[leg.seg] } else { core.cyc_syms[leg.seg] };
        if !leg.in_prefix && leg.seg < core.boundary_offsets.len() {
            while samples.len() as u64 <= leg.lap {
                samples.push(Vec::new());
            }
            debug_assert_eq!(samples[leg.lap as usize].len(), leg.seg);
            samples[leg.lap as usize].push(q);
        }
        let cons = Constraint::Viable(&b_tables[li]);
        q = ff_through(a, sym, 0, leg.count, q, &cons, &mut steps, core.limits.step_cap)?;
    }
    // `q` now sits at t*; continue inside alpha. The current location is
    // (hit.seg, hit.offset) of hit.lap, or the prefix hit position.
    debug_assert!(set_contains(&core.alpha, q));
    let (mut lap, mut seg, mut offset) = if hit.in_prefix {
        // Finish the prefix inside alpha first.
        let mut qq = q;
        for i in hit.seg..core.pre_syms.len() {
            let from = if i == hit.seg { hit.offset } else { 0 };
            let cons = Constraint::Safe {
                table: &core.pre_safe_tables[i],
                count: core.pre_counts[i],
            };
            qq = ff_through(
                a,
                core.pre_syms[i],
                from,
                core.pre_counts[i],
                qq,
                &cons,
                &mut steps,
                core.limits.step_cap,
            )?;
        }
        q = qq;
        (0u64, 0usize, 0u64)
    } else {
        (hit.lap, hit.seg, hit.offset)
    };
    'alpha: loop {
        if lap >= core.limits.max_sample_laps {
            break;
        }
        while seg < core.cyc_syms.len() {
            if offset == 0 {
                while samples.len() as u64 <= lap {
                    samples.push(Vec::new());
                }
                let row = &mut samples[lap as usize];
                if row.len() == seg {
                    row.push(q);
                }
                if seg == 0 && core.u + lap * core.v >= hit.t {
                    if let Some(&first) = lap_starts.get(&q) {
                        loop_info = Some((first, lap - first));
                        break 'alpha;
                    }
                    lap_starts.insert(q, lap);
                }
            }
            let cons = core.safe_constraint(seg);
            q = ff_through(
                a,
                core.cyc_syms[seg],
                offset,
                core.cyc_counts[seg],
                q,
                &cons,
                &mut steps,
                core.limits.step_cap,
            )?;
            offset = 0;
            seg += 1;
        }
        seg = 0;
        lap += 1;
    }

    let mut analysis = ShortestRunAnalysis {
        core,
        t_star: hit.t,
        samples,
        loop_info,
        run: None,
    };

    // Materialize the full descriptor when it fits the cap: walk every
    // letter through the same constraint tables.
    if let Some((first, period)) = analysis.loop_info {
        let stem_len = analysis.core.u + first * analysis.core.v;
        let loop_len = period * analysis.core.v;
        if stem_len + 1 + loop_len <= analysis.core.limits.materialize_cap {
            let total = stem_len + loop_len;
            let mut states = Vec::with_capacity(total as usize + 1);
            let mut q = a.initial();
            states.push(q);
            let mut t = 0u64;
            let mut li = 0usize;
            // Stem + loop via per-letter greedy steps.
            let core = &analysis.core;
            let walk_segment = |sym: u16,
                                    count: u64,
                                    cons: &Constraint<'_>,
                                    from: u64,
                                    q: &mut StateId,
                                    t: &mut u64,
                                    states: &mut Vec<StateId>|
             -> Result<(), EngineError> {
                for m in from..count {
                    if *t >= total {
                        return Ok(());
                    }
                    *q = greedy_step(a, *q, sym, cons.at(m + 1)).ok_or_else(|| {
                        EngineError::InvalidQuery("greedy run ran out of viable successors".into())
                    })?;
                    *t += 1;
                    states.push(*q);
                }
                Ok(())
            };
            // Legs cover up to the hit; afterwards the safe tables take over.
            for leg in &legs {
                let sym =
                    if leg.in_prefix { core.pre_syms[leg.seg] } else { core.cyc_syms[leg.seg] };
                let cons = Constraint::Viable(&b_tables[li]);
                walk_segment(sym, leg.count, &cons, 0, &mut q, &mut t, &mut states)?;
                li += 1;
            }
            if hit.in_prefix {
                for i in hit.seg..core.pre_syms.len() {
                    let from = if i == hit.seg { hit.offset } else { 0 };
                    let cons = Constraint::Safe {
                        table: &core.pre_safe_tables[i],
                        count: core.pre_counts[i],
                    };
                    walk_segment(
                        core.pre_syms[i],
                        core.pre_counts[i],
                        &cons,
                        from,
                        &mut q,
                        &mut t,
                        &mut states,
                    )?;
                }
            }
            let (mut seg, mut offset) =
                if hit.in_prefix { (0usize, 0u64) } else { (hit.seg, hit.offset) };
            while t < total {
                while seg < core.cyc_syms.len() && t < total {
                    let cons = core.safe_constraint(seg);
                    walk_segment(
                        core.cyc_syms[seg],
                        core.cyc_counts[seg],
                        &cons,
                        offset,
                        &mut q,
                        &mut t,
                        &mut states,
                    )?;
                    offset = 0;
                    seg += 1;
                }
                seg = 0;
            }
            let stem = states[..=stem_len as usize].to_vec();
            let loop_states = states[stem_len as usize + 1..].to_vec();
            debug_assert_eq!(loop_states.len() as u64, loop_len);
            analysis.run = Some(RunDescriptor::new(stem, loop_states));
        }
    }

    Ok(Some(analysis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AutomatonBuilder;
    use crate::product;
    use crate::run::validate_run;
    use crate::symbol::Symbol;

    fn sym(text: &str) -> Symbol {
        text.parse().unwrap()
    }

    fn rle(text: &str) -> RleWord {
        text.parse().unwrap()
    }

    /// Normal co-Buchi machine over k=1: count two plain 1s (anything else
    /// is absorbed by self-loops), then alpha state 2 traps every symbol.
    fn counter_machine() -> OmegaAutomaton {
        let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, 1, 3);
        b.set_default(0, 0);
        b.add_edge(0, sym("1"), 1);
        b.set_default(1, 1);
        b.add_edge(1, sym("1"), 2);
        b.set_default(2, 2);
        b.mark_accepting(2);
        b.build()
    }

    #[test]
    fn agrees_with_product_engine_on_expanded_words() {
        let a = counter_machine();
        for text in ["| 1x7", "2x3 | 1 ~1", "| ~2 1x4", "1 | ~1x5 1", "| ~2x6"] {
            let w = rle(text);
            let explicit = w.expand(10_000).unwrap();
            let expect = product::accepts(&a, &explicit).unwrap();
            assert_eq!(accepts_rle(&a, &w).unwrap(), expect, "on {text}");
        }
    }

    #[test]
    fn t_star_matches_explicit_shortest_run() {
        let a = counter_machine();
        for text in ["| 1x9", "2x5 | 1 ~1 1", "~2 1 | 1x3 ~1x2"] {
            let w = rle(text);
            let explicit = w.expand(10_000).unwrap();
            let run = product::shortest_accepting_run(&a, &explicit).unwrap().unwrap();
            let explicit_t_star = (0..10_000)
                .find(|&t| a.is_accepting(run.state_at(t)))
                .unwrap();
            let analysis = analyze_shortest_run(&a, &w, &EngineLimits::default())
                .unwrap()
                .unwrap();
            assert_eq!(analysis.t_star(), explicit_t_star, "on {text}");
        }
    }

    #[test]
    fn materialized_run_equals_explicit_canonical_run() {
        let a = counter_machine();
        for text in ["| 1x6", "2 | 1 ~1 1 ~1", "| ~2 1 ~2 1 ~2 1"] {
            let w = rle(text);
            let explicit = w.expand(10_000).unwrap();
            let expect = product::shortest_accepting_run(&a, &explicit).unwrap().unwrap();
            let analysis = analyze_shortest_run(&a, &w, &EngineLimits::default())
                .unwrap()
                .unwrap();
            let got = analysis.run().expect("small word must materialize");
            assert_eq!(validate_run(&a, &explicit, got), Ok(()), "on {text}");
            // Same run position by position (descriptors may differ in
            // where they cut the loop, so compare pointwise).
            for t in 0..60 {
                assert_eq!(got.state_at(t), expect.state_at(t), "position {t} on {text}");
            }
        }
    }

    #[test]
    fn samples_match_materialized_run() {
        let a = counter_machine();
        let w = rle("2 | 1x5 ~1x3");
        let analysis =
            analyze_shortest_run(&a, &w, &EngineLimits::default()).unwrap().unwrap();
        let run = analysis.run().unwrap().clone();
        for lap in 0..analysis.sampled_laps() {
            for j in 0..analysis.num_boundaries() {
                if let Some(q) = analysis.state_at_boundary(lap, j) {
                    let pos = analysis.boundary_position(lap, j);
                    assert_eq!(q, run.state_at(pos), "lap {lap} boundary {j}");
                }
            }
        }
        // Loop arithmetic answers laps far beyond the sampled range.
        let (first, period) = analysis.loop_info().unwrap();
        let far = first + 5 * period;
        assert_eq!(
            analysis.state_at_boundary(far, 0),
            analysis.state_at_boundary(first, 0)
        );
    }

    #[test]
    fn huge_counts_fast_forward() {
        let a = counter_machine();
        // Two plain 1s appear only after one full lap of the ~1 block, so
        // the frontier crawls; counts are far beyond anything walkable.
        let w = rle("~1x1000000000 | 1 ~1x999999999");
        let analysis =
            analyze_shortest_run(&a, &w, &EngineLimits::default()).unwrap().unwrap();
        // t* = prefix + first lap (1 + 999999999) + second lap's plain 1:
        // after the second plain 1 the run can sit in alpha.
        assert_eq!(analysis.t_star(), 1_000_000_000 + 1_000_000_000 + 1);
        assert!(analysis.run().is_none(), "far too long to materialize");
        assert!(accepts_rle(&a, &w).unwrap());
    }

    #[test]
    fn rejection_detected_via_lap_repeat() {
        let a = counter_machine();
        // Only one plain 1 ever: never reaches the trap.
        let w = rle("1 | ~1x12345");
        assert_eq!(accepts_rle(&a, &w).unwrap(), false);
        assert!(analyze_shortest_run(&a, &w, &EngineLimits::default()).unwrap().is_none());
    }

    #[test]
    fn death_of_all_runs_rejects() {
        let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, 1, 2);
        b.add_edge(0, sym("1"), 1);
        b.add_edge(1, sym("1"), 1);
        b.mark_accepting(1);
        // No transitions on ~1 at all.
        let a = b.build();
        assert_eq!(accepts_rle(&a, &rle("| 1x50 ~1")).unwrap(), false);
        assert_eq!(accepts_rle(&a, &rle("| 1")).unwrap(), true);
    }

    #[test]
    fn general_cobuchi_acceptance_without_normal_form() {
        // Alpha state 0 leaks to 1 on ~1; still accepts words that stay on
        // plain 1 forever, rejects once ~1 recurs forever.
        let mut b = AutomatonBuilder::new(AcceptanceKind::CoBuchi, 1, 2);
        b.add_edge(0, sym("1"), 0);
        b.add_edge(0, sym("~1"), 1);
        b.add_edge(1, sym("1"), 1);
        b.add_edge(1, sym("~1"), 0);
        b.mark_accepting(0);
        let a = b.build();
        assert!(!a.is_normal_form());
        for text in ["| 1x40", "~1 ~1 | 1x7", "| 1x5 ~1x2", "| ~1x9 1"] {
            let w = rle(text);
            let explicit = w.expand(10_000).unwrap();
            assert_eq!(
                accepts_rle(&a, &w).unwrap(),
                product::accepts(&a, &explicit).unwrap(),
                "on {text}"
            );
        }
        assert!(matches!(
            analyze_shortest_run(&a, &rle("| 1"), &EngineLimits::default()),
            Err(EngineError::RequiresNormalForm)
        ));
    }

    #[test]
    fn buchi_input_is_rejected() {
        let mut b = AutomatonBuilder::new(AcceptanceKind::Buchi, 1, 1);
        b.set_default(0, 0);
        b.mark_accepting(0);
        let a = b.build();
        assert!(matches!(
            accepts_rle(&a, &rle("| 1")),
            Err(EngineError::RequiresCoBuchi)
        ));
    }

    #[test]
    fn alpha_repeat_finds_a_loop_inside_a_long_segment() {
        let a = counter_machine();
        let w = rle("1 1 | 1x100 ~1x3");
        let analysis =
            analyze_shortest_run(&a, &w, &EngineLimits::default()).unwrap().unwrap();
        assert_eq!(analysis.t_star(), 2);
        let (x, y) = analysis.alpha_repeat_in_segment(1, 0).unwrap();
        assert!(x < y && y <= 100);
        // The materialized run confirms the revisit.
        let run = analysis.run().unwrap();
        let base = analysis.boundary_position(1, 0);
        assert_eq!(run.state_at(base + x), run.state_at(base + y));
    }

    #[test]
    fn budget_exceeded_on_absurd_caps() {
        let a = counter_machine();
        let w = rle("| 1x1000 ~1x1000");
        let limits = EngineLimits { table_cap: 1, ..EngineLimits::default() };
        assert!(matches!(
            analyze_shortest_run(&a, &w, &limits),
            Err(EngineError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn symbol_out_of_range_is_reported() {
        let a = counter_machine();
        assert!(matches!(
            accepts_rle(&a, &rle("| 5")),
            Err(EngineError::SymbolOutOfRange { .. })
        ));
    }
}
