//! Exact queue number by branch and bound over linear extensions.
//!
//! The search grows extensions one source at a time. For a prefix it keeps
//!
//! * `g[l]`: the largest rainbow among completed edges (both ends placed)
//!   whose left end lies after position `l`, and
//! * `M = g` over everything: the largest completed rainbow.
//!
//! When a vertex `y` is placed every edge `(x, y)` completes with value
//! `1 + g[pos x]`, since exactly the completed edges starting after `x` nest
//! inside it. The lower bound at a prefix combines `M` with rainbows that are
//! already forced: an open edge (placed source, unplaced target) nests every
//! completed edge starting after its source, every open edge starting later
//! whose target is below its own target in the poset, and every future edge
//! whose target is below its own target.
//!
//! Prefixes with equal placed sets, equal open sources in equal order and
//! equal `g` at those sources have identical futures, so a memo records the
//! smallest `M` already explored for such a key; a revisit with `M` at least
//! as large is dominated.
//!
//! Time limits and cancellation come from a [`SearchControl`] supplied by
//! the caller; the crate itself has no clock.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use core::time::Duration;

use hashbrown::HashMap;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::extensions::{lazy_extension, mru_extension, random_extension, TieBreak};
use crate::poset::{ChainDecomposition, Edge, LinearExtension, Poset};
use crate::rainbow::{max_rainbow, queue_assignment, QueueLayout};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("constraint `{before}` before `{after}` contradicts the order")]
    InconsistentConstraint { before: String, after: String },
    #[error("constraint refers to unknown element #{0}")]
    UnknownElement(usize),
}

/// Extra precedences `(u, v)`: `u` must come before `v`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixConstraint {
    pub pairs: Vec<Edge>,
}

/// Snapshot passed to [`SearchControl::progress`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub explored: u64,
    pub lower_bound: usize,
    pub upper_bound: usize,
}

/// Hooks for clocks, cancellation and progress reporting.
pub trait SearchControl: Sync {
    /// Time since the search started, when a clock is available.
    fn elapsed(&self) -> Option<Duration> {
        None
    }

    fn cancelled(&self) -> bool {
        false
    }

    fn progress(&self, _progress: Progress) {}
}

#[derive(Clone, Copy)]
pub struct SearchOptions<'a> {
    /// Needs a [`SearchControl`] with a clock to take effect.
    pub time_budget: Option<Duration>,
    pub node_budget: Option<u64>,
    /// Only layouts with fewer queues than this are of interest.
    pub initial_upper: Option<usize>,
    pub constraints: Option<&'a PrefixConstraint>,
    /// Lower-bound and memo pruning; without it every extension is visited.
    pub prune: bool,
    /// Stop as soon as a layout below the initial bound is found.
    pub stop_at_first: bool,
    /// Memo capacity in entries; 0 disables the memo.
    pub memo_entries: usize,
    pub control: Option<&'a dyn SearchControl>,
}

impl Default for SearchOptions<'_> {
    fn default() -> Self {
        SearchOptions {
            time_budget: None,
            node_budget: None,
            initial_upper: None,
            constraints: None,
            prune: true,
            stop_at_first: false,
            memo_entries: 1 << 20,
            control: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub lower_bound: usize,
    pub upper_bound: usize,
    /// Layout with `upper_bound` queues.
    pub certificate: Option<QueueLayout>,
    /// `lower_bound == upper_bound`, i.e. the queue number is known.
    pub proven: bool,
    /// Whether every branch was visited or pruned.
    pub exhausted: bool,
    /// Number of search nodes (extension prefixes).
    pub explored: u64,
    pub elapsed: Duration,
}

/// State shared by all workers of one search.
#[derive(Debug)]
pub struct SharedState {
    bound: AtomicUsize,
    explored: AtomicU64,
    stop: AtomicBool,
}

impl SharedState {
    pub fn bound(&self) -> usize {
        self.bound.load(Ordering::Relaxed)
    }

    pub fn explored(&self) -> u64 {
        self.explored.load(Ordering::Relaxed)
    }

    pub fn request_stop(&self) {
        self.stop.store(true, Ordering::Relaxed);
    }

    pub fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

/// Immutable search data; workers borrow it.
pub struct Searcher<'a> {
    poset: &'a Poset,
    opts: SearchOptions<'a>,
    n: usize,
    chain_of: Vec<usize>,
    chain_count: usize,
    /// Cover and constraint successors.
    after: Vec<Vec<usize>>,
    before_count: Vec<usize>,
    /// Cover predecessors (edge sources) and successors.
    in_src: Vec<Vec<usize>>,
    out_tgt: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    /// Largest rainbow forced inside each edge by the order alone, itself included.
    forced: Vec<usize>,
    /// Per vertex `y`: edges with target below `y`, by `forced` descending.
    forced_below: Vec<Vec<usize>>,
    /// All edges by `forced` descending.
    forced_all: Vec<usize>,
    static_lb: usize,
    heuristic: (usize, Vec<usize>),
    bound0: usize,
}

impl<'a> Searcher<'a> {
    pub fn new(poset: &'a Poset, opts: &SearchOptions<'a>) -> Result<Self, SearchError> {
        let n = poset.len();
        let mut after: Vec<Vec<usize>> = (0..n).map(|v| poset.successors(v).to_vec()).collect();
        if let Some(c) = opts.constraints {
            for &(u, v) in &c.pairs {
                if u >= n || v >= n {
                    return Err(SearchError::UnknownElement(u.max(v)));
                }
                if u == v || poset.less(v, u) {
                    return Err(inconsistent(poset, u, v));
                }
                if !poset.less(u, v) {
                    after[u].push(v);
                }
            }
        }
        for a in &mut after {
            a.sort_unstable();
            a.dedup();
        }
        let mut before_count = vec![0; n];
        for a in &after {
            for &v in a {
                before_count[v] += 1;
            }
        }
        let Some(greedy) = constrained_order(poset, &after, &before_count) else {
            let (u, v) = opts.constraints.map(|c| c.pairs[0]).unwrap_or((0, 0));
            return Err(inconsistent(poset, u, v));
        };

        let edges = poset.cover_edges().to_vec();
        let m = edges.len();
        let mut in_src = vec![Vec::new(); n];
        let mut out_tgt = vec![Vec::new(); n];
        for &(x, y) in &edges {
            in_src[y].push(x);
            out_tgt[x].push(y);
        }

        // forced nesting: f inside e whenever x_e < x_f and y_f < y_e
        let mut by_src: Vec<usize> = (0..m).collect();
        by_src.sort_unstable_by_key(|&e| core::cmp::Reverse(poset.topo_rank(edges[e].0)));
        let mut forced = vec![1; m];
        for (i, &e) in by_src.iter().enumerate() {
            let (xe, ye) = edges[e];
            let inner = by_src[..i]
                .iter()
                .filter(|&&f| poset.less(xe, edges[f].0) && poset.less(edges[f].1, ye))
                .map(|&f| forced[f])
                .max()
                .unwrap_or(0);
            forced[e] = 1 + inner;
        }
        let mut forced_all: Vec<usize> = (0..m).collect();
        forced_all.sort_by_key(|&e| core::cmp::Reverse(forced[e]));
        let forced_below: Vec<Vec<usize>> = (0..n)
            .map(|y| forced_all.iter().copied().filter(|&f| poset.less(edges[f].1, y)).collect())
            .collect();
        let static_lb = forced.iter().copied().max().unwrap_or(0);

        let chains = poset.chain_decomposition();
        let chain_of: Vec<usize> = (0..n).map(|v| chains.chain_of(v)).collect();
        let satisfies = |order: &[usize]| {
            let pos = positions(order);
            opts.constraints
                .is_none_or(|c| c.pairs.iter().all(|&(u, v)| pos[u] < pos[v]))
        };
        let mut heuristic = (max_rainbow(&LinearExtension::from_order_unchecked(greedy.clone()), &edges).0, greedy);
        for order in [strategy_order(poset, &chains, true), strategy_order(poset, &chains, false)] {
            if satisfies(&order) {
                let value = max_rainbow(&LinearExtension::from_order_unchecked(order.clone()), &edges).0;
                if value < heuristic.0 {
                    heuristic = (value, order);
                }
            }
        }
        let bound0 = opts.initial_upper.map_or(heuristic.0, |k| k.min(heuristic.0));
        Ok(Searcher {
            poset,
            opts: *opts,
            n,
            chain_count: chains.len(),
            chain_of,
            after,
            before_count,
            in_src,
            out_tgt,
            edges,
            forced,
            forced_below,
            forced_all,
            static_lb,
            heuristic,
            bound0,
        })
    }

    /// Rainbow size of the best heuristic extension found before searching.
    pub fn heuristic_value(&self) -> usize {
        self.heuristic.0
    }

    /// Lower bound valid before any search: the largest order-forced rainbow.
    pub fn static_lower_bound(&self) -> usize {
        self.static_lb
    }

    pub fn shared(&self) -> SharedState {
        SharedState {
            bound: AtomicUsize::new(self.bound0),
            explored: AtomicU64::new(0),
            stop: AtomicBool::new(false),
        }
    }

    /// Prefixes covering the whole search space, expanded breadth first
    /// until there are at least `target` of them (or all are complete).
    pub fn frontier(&self, target: usize) -> Vec<Vec<usize>> {
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        while layer.len() < target {
            let mut next = Vec::new();
            let mut grew = false;
            for prefix in &layer {
                let srcs = self.sources_after(prefix);
                if srcs.is_empty() {
                    next.push(prefix.clone());
                    continue;
                }
                grew = true;
                for v in srcs {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            layer = next;
            if !grew {
                break;
            }
        }
        layer
    }

    fn sources_after(&self, prefix: &[usize]) -> Vec<usize> {
        let mut missing = self.before_count.clone();
        let mut placed = vec![false; self.n];
        for &v in prefix {
            placed[v] = true;
            for &s in &self.after[v] {
                missing[s] -= 1;
            }
        }
        (0..self.n).filter(|&v| !placed[v] && missing[v] == 0).collect()
    }

    pub fn worker(&self) -> Worker<'_, 'a> {
        let n = self.n;
        Worker {
            s: self,
            order: Vec::with_capacity(n),
            pos: vec![usize::MAX; n],
            placed: BitSet::new(n),
            missing: self.before_count.clone(),
            open_out: self.out_tgt.iter().map(Vec::len).collect(),
            last_used: vec![0; self.chain_count],
            g: (0..=n).map(Vec::with_capacity).collect(),
            m: vec![0; n + 1],
            memo: HashMap::new(),
            best: None,
            ops: 0,
        }
    }

    /// Combines worker outcomes. `exhausted` must be true only if every
    /// frontier prefix was fully explored.
    pub fn finish(
        &self,
        shared: &SharedState,
        exhausted: bool,
        bests: impl IntoIterator<Item = Option<(usize, Vec<usize>)>>,
    ) -> SearchResult {
        let mut best = self.heuristic.clone();
        for (value, order) in bests.into_iter().flatten() {
            if value < best.0 {
                best = (value, order);
            }
        }
        let exhausted = exhausted && !(self.opts.stop_at_first && best.0 < self.bound0);
        let trivial = usize::from(!self.edges.is_empty()).max(self.static_lb);
        let lower_bound = if exhausted { shared.bound().max(trivial).min(best.0) } else { trivial.min(best.0) };
        let ext = LinearExtension::from_order_unchecked(best.1);
        let certificate = queue_assignment(&ext, &self.edges);
        debug_assert_eq!(certificate.queue_count, best.0);
        SearchResult {
            lower_bound,
            upper_bound: best.0,
            certificate: Some(certificate),
            proven: lower_bound == best.0,
            exhausted,
            explored: shared.explored(),
            elapsed: self.opts.control.and_then(|c| c.elapsed()).unwrap_or_default(),
        }
    }
}

fn inconsistent(poset: &Poset, u: usize, v: usize) -> SearchError {
    SearchError::InconsistentConstraint {
        before: poset.name(u).to_string(),
        after: poset.name(v).to_string(),
    }
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    pos
}

/// Kahn's algorithm over the augmented precedences, `None` on a cycle.
fn constrained_order(poset: &Poset, after: &[Vec<usize>], before_count: &[usize]) -> Option<Vec<usize>> {
    let n = poset.len();
    let mut missing = before_count.to_vec();
    let mut ready: Vec<usize> = (0..n).rev().filter(|&v| missing[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &s in &after[v] {
            missing[s] -= 1;
            if missing[s] == 0 {
                ready.push(s);
            }
        }
    }
    (order.len() == n).then_some(order)
}

fn strategy_order(poset: &Poset, chains: &ChainDecomposition, mru: bool) -> Vec<usize> {
    let run = if mru { mru_extension } else { lazy_extension };
    let (ext, _) = run(poset, chains, &TieBreak::MinIndex).expect("own decomposition is valid");
    ext.order().to_vec()
}

const TIME_CHECK_MASK: u64 = (1 << 10) - 1;
const PROGRESS_MASK: u64 = (1 << 16) - 1;
const MEMO_KEY_CAP: usize = 256;

/// Depth-first explorer with its own memo; reusable across prefixes.
pub struct Worker<'s, 'a> {
    s: &'s Searcher<'a>,
    order: Vec<usize>,
    pos: Vec<usize>,
    placed: BitSet,
    missing: Vec<usize>,
    /// Unplaced targets per placed source.
    open_out: Vec<usize>,
    /// 1 + step of last use per chain, 0 if unused.
    last_used: Vec<usize>,
    g: Vec<Vec<u32>>,
    m: Vec<usize>,
    memo: HashMap<Vec<u64>, usize>,
    best: Option<(usize, Vec<usize>)>,
    ops: u64,
}

impl Worker<'_, '_> {
    /// Explores every extension starting with `prefix`. Returns false if the
    /// search stopped early (budget, cancellation or `stop_at_first`).
    pub fn explore(&mut self, prefix: &[usize], shared: &SharedState) -> bool {
        debug_assert!(self.order.is_empty());
        let mut undo = Vec::with_capacity(prefix.len());
        self.g[0].clear();
        self.m[0] = 0;
        for &v in prefix {
            undo.push(self.place(v));
        }
        let complete = self.dfs(shared);
        for u in undo.into_iter().rev() {
            self.unplace(u);
        }
        complete
    }

    pub fn into_best(self) -> Option<(usize, Vec<usize>)> {
        self.best
    }

    fn tick(&mut self, shared: &SharedState) {
        let explored = shared.explored.fetch_add(1, Ordering::Relaxed) + 1;
        self.ops += 1;
        let opts = &self.s.opts;
        if opts.node_budget.is_some_and(|b| explored >= b) {
            shared.request_stop();
        }
        if self.ops & TIME_CHECK_MASK == 0 {
            if let Some(c) = opts.control {
                let late = opts
                    .time_budget
                    .zip(c.elapsed())
                    .is_some_and(|(budget, spent)| spent >= budget);
                if late || c.cancelled() {
                    shared.request_stop();
                }
                if self.ops & PROGRESS_MASK == 0 {
                    c.progress(Progress {
                        explored,
                        lower_bound: self.s.static_lb,
                        upper_bound: shared.bound(),
                    });
                }
            }
        }
    }

    fn dfs(&mut self, shared: &SharedState) -> bool {
        self.tick(shared);
        if shared.stopped() {
            return false;
        }
        let depth = self.order.len();
        let bound = shared.bound();
        let mval = self.m[depth];
        if depth == self.s.n {
            if mval < bound {
                shared.bound.fetch_min(mval, Ordering::Relaxed);
                if self.best.as_ref().is_none_or(|b| mval < b.0) {
                    self.best = Some((mval, self.order.clone()));
                }
                if self.s.opts.stop_at_first {
                    shared.request_stop();
                    return false;
                }
            }
            return true;
        }
        let prune = self.s.opts.prune;
        if prune && self.lower_bound() >= bound {
            return true;
        }
        let key = if prune && self.s.opts.memo_entries > 0 { self.memo_key() } else { None };
        if let Some(k) = &key {
            if self.memo.get(k).is_some_and(|&seen| seen <= mval) {
                return true;
            }
        }

        let mut children: Vec<usize> = (0..self.s.n)
            .filter(|&v| !self.placed.contains(v) && self.missing[v] == 0)
            .collect();
        children.sort_by_key(|&v| core::cmp::Reverse(self.last_used[self.s.chain_of[v]]));
        let mut complete = true;
        for v in children {
            let u = self.place(v);
            let ok = self.dfs(shared);
            self.unplace(u);
            if !ok {
                complete = false;
                break;
            }
        }
        if complete {
            if let Some(k) = key {
                if self.memo.len() >= self.s.opts.memo_entries {
                    self.memo.clear();
                }
                let e = self.memo.entry(k).or_insert(usize::MAX);
                *e = (*e).min(mval);
            }
        }
        complete
    }

    /// Places `v`; returns what `unplace` needs.
    fn place(&mut self, v: usize) -> (usize, usize) {
        let s = self.s;
        let d = self.order.len();
        let (lower, upper) = self.g.split_at_mut(d + 1);
        let (old, new) = (&lower[d], &mut upper[0]);
        new.clear();
        new.extend_from_slice(old);
        new.push(0);
        let mut mval = self.m[d];
        for &x in &s.in_src[v] {
            let px = self.pos[x];
            let val = 1 + old[px];
            for gl in &mut new[..px] {
                *gl = (*gl).max(val);
            }
            mval = mval.max(val as usize);
            self.open_out[x] -= 1;
        }
        self.m[d + 1] = mval;
        self.order.push(v);
        self.pos[v] = d;
        self.placed.insert(v);
        for &t in &s.after[v] {
            self.missing[t] -= 1;
        }
        let c = s.chain_of[v];
        let prev = core::mem::replace(&mut self.last_used[c], d + 1);
        (v, prev)
    }

    fn unplace(&mut self, (v, prev): (usize, usize)) {
        let s = self.s;
        self.last_used[s.chain_of[v]] = prev;
        for &t in &s.after[v] {
            self.missing[t] += 1;
        }
        self.placed.remove(v);
        self.pos[v] = usize::MAX;
        self.order.pop();
        for &x in &s.in_src[v] {
            self.open_out[x] += 1;
        }
    }

    fn open_sources(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().copied().filter(|&x| self.open_out[x] > 0)
    }

    fn lower_bound(&self) -> usize {
        let s = self.s;
        let d = self.order.len();
        let g = &self.g[d];
        let mut lb = self.m[d];
        let future = |f: usize| !self.placed.contains(s.edges[f].0);
        if let Some(&f) = s.forced_all.iter().find(|&&f| future(f)) {
            lb = lb.max(s.forced[f]);
        }
        // open edges, innermost sources first
        let open: Vec<usize> = self.open_sources().collect();
        let mut done: Vec<(usize, usize)> = Vec::new(); // (target, value)
        for &x in open.iter().rev() {
            let base = g[self.pos[x]] as usize;
            let mut vals = Vec::new();
            for &y in &s.out_tgt[x] {
                if self.placed.contains(y) {
                    continue;
                }
                let mut inner = base;
                for &(t, val) in &done {
                    if s.poset.less(t, y) {
                        inner = inner.max(val);
                    }
                }
                if let Some(&f) = s.forced_below[y].iter().find(|&&f| future(f)) {
                    inner = inner.max(s.forced[f]);
                }
                vals.push((y, inner + 1));
                lb = lb.max(inner + 1);
            }
            done.extend(vals);
        }
        lb
    }

    fn memo_key(&self) -> Option<Vec<u64>> {
        let d = self.order.len();
        let words = self.placed.words();
        let mut key = Vec::with_capacity(words.len() + 8);
        key.extend_from_slice(words);
        for x in self.open_sources() {
            key.push(((x as u64) << 32) | u64::from(self.g[d][self.pos[x]]));
            if key.len() > MEMO_KEY_CAP {
                return None;
            }
        }
        Some(key)
    }
}

/// Sequential exact search.
pub fn queue_number_exact(poset: &Poset, options: &SearchOptions<'_>) -> Result<SearchResult, SearchError> {
    let searcher = Searcher::new(poset, options)?;
    let shared = searcher.shared();
    let mut worker = searcher.worker();
    let complete = worker.explore(&[], &shared);
    Ok(searcher.finish(&shared, complete, [worker.into_best()]))
}

#[derive(Debug, Clone)]
pub struct LowerBoundCheck {
    /// Every admissible extension needs at least `k` queues.
    pub verified: bool,
    /// An extension with fewer than `k` queues, if one was found.
    pub countermodel: Option<QueueLayout>,
    pub result: SearchResult,
}

/// Decides whether every admissible extension needs at least `k` queues.
pub fn verify_lower_bound(
    poset: &Poset,
    k: usize,
    options: &SearchOptions<'_>,
) -> Result<LowerBoundCheck, SearchError> {
    let opts = SearchOptions {
        initial_upper: Some(k),
        stop_at_first: true,
        ..*options
    };
    let result = queue_number_exact(poset, &opts)?;
    Ok(lower_bound_check(k, result))
}

/// Interprets a search run with `initial_upper = k`.
pub fn lower_bound_check(k: usize, result: SearchResult) -> LowerBoundCheck {
    let countermodel = result.certificate.clone().filter(|c| c.queue_count < k);
    LowerBoundCheck {
        verified: countermodel.is_none() && result.lower_bound >= k,
        countermodel,
        result,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Lazy,
    Mru,
    Random(u64),
}

/// Best layout among the given strategies (minimum decomposition, minimum
/// index tie-break); earlier strategies win ties. `None` if `strategies` is empty.
pub fn best_heuristic_layout(poset: &Poset, strategies: &[Strategy]) -> Option<QueueLayout> {
    let chains = poset.chain_decomposition();
    strategies
        .iter()
        .map(|s| {
            let order = match *s {
                Strategy::Lazy => strategy_order(poset, &chains, false),
                Strategy::Mru => strategy_order(poset, &chains, true),
                Strategy::Random(seed) => random_extension(poset, seed).order().to_vec(),
            };
            queue_assignment(&LinearExtension::from_order_unchecked(order), poset.cover_edges())
        })
        .reduce(|best, l| if l.queue_count < best.queue_count { l } else { best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gen_counterexample;

    fn exact(p: &Poset) -> SearchResult {
        queue_number_exact(p, &SearchOptions::default()).unwrap()
    }

    #[test]
    fn trivial_posets() {
        let chain = Poset::build(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let r = exact(&chain);
        assert!(r.proven);
        assert_eq!(r.upper_bound, 1);
        let star = Poset::build(
            &["s", "x1", "x2", "x3", "x4"],
            &[("s", "x1"), ("s", "x2"), ("s", "x3"), ("s", "x4")],
        )
        .unwrap();
        let r = exact(&star);
        assert!(r.proven);
        assert_eq!(r.lower_bound, 1);
        let empty = Poset::build::<&str>(&[], &[]).unwrap();
        assert_eq!(exact(&empty).upper_bound, 0);
    }

    #[test]
    fn small_counterexample_needs_three() {
        let g = gen_counterexample(6, 2, false).unwrap();
        let r = exact(&g.poset);
        assert!(r.proven && r.exhausted);
        assert_eq!((r.lower_bound, r.upper_bound), (3, 3));
        let cert = r.certificate.unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.queue_count, 3);
        assert!(r.explored <= 84084);
        let v = verify_lower_bound(&g.poset, 3, &SearchOptions::default()).unwrap();
        assert!(v.verified && v.countermodel.is_none());
        let v = verify_lower_bound(&g.poset, 4, &SearchOptions::default()).unwrap();
        assert!(!v.verified);
        assert_eq!(v.countermodel.unwrap().queue_count, 3);
    }

    #[test]
    fn constraints_are_checked() {
        let p = Poset::build(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let bad = PrefixConstraint { pairs: vec![(1, 0)] };
        let opts = SearchOptions {
            constraints: Some(&bad),
            ..Default::default()
        };
        assert!(matches!(
            queue_number_exact(&p, &opts),
            Err(SearchError::InconsistentConstraint { .. })
        ));
        let cyc = PrefixConstraint {
            pairs: vec![(1, 2), (2, 0)],
        };
        let opts = SearchOptions {
            constraints: Some(&cyc),
            ..Default::default()
        };
        assert!(queue_number_exact(&p, &opts).is_err());
        let ok = PrefixConstraint { pairs: vec![(2, 0)] };
        let opts = SearchOptions {
            constraints: Some(&ok),
            ..Default::default()
        };
        let r = queue_number_exact(&p, &opts).unwrap();
        assert!(r.proven);
        assert_eq!(r.certificate.unwrap().extension.order()[0], 2);
    }

    #[test]
    fn node_budget_stops_honestly() {
        let g = gen_counterexample(6, 2, false).unwrap();
        let opts = SearchOptions {
            node_budget: Some(5),
            ..Default::default()
        };
        let r = queue_number_exact(&g.poset, &opts).unwrap();
        assert!(!r.exhausted);
        assert!(r.lower_bound <= 3 && r.upper_bound >= 3);
    }

    #[test]
    fn heuristic_layouts() {
        let chain = Poset::build(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(best_heuristic_layout(&chain, &[Strategy::Lazy]).unwrap().queue_count, 1);
        assert!(best_heuristic_layout(&chain, &[]).is_none());
    }
}
