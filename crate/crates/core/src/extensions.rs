//! Lazy and most-recently-used (MRU) linear extensions.
//!
//! Both strategies grow the extension one element at a time, always choosing
//! from the current source set `S`: the unplaced elements none of whose cover
//! predecessors is unplaced. A lazy step stays in the chain of the previously
//! placed element whenever `S` has an element of it; an MRU step picks from
//! the most recently used chain that has an element in `S`. Remaining free
//! choices are resolved by a [`TieBreak`].

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::poset::{is_down_closed, ChainDecomposition, LinearExtension, Poset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("placed set is not downward closed")]
    NotAnIdeal,
    #[error("chain decomposition does not belong to this poset")]
    InvalidDecomposition,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Resolution of free choices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Smallest element index in `S`.
    #[default]
    MinIndex,
    /// Uniform choice from `S`, reproducible for a fixed seed.
    SeededRandom(u64),
    /// Earliest element of the given sequence; elements missing from it rank last
    /// (by index). Replaying a known extension this way reproduces its free choices.
    Preference(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepReason {
    /// Continued the chain of the previous element.
    SameChain,
    /// Took the chain of the element placed at this 0-based step, the most
    /// recent one with a source available.
    RecentChain(usize),
    TieBreak,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Source set before the step, ascending by index.
    pub sources: Vec<usize>,
    pub chosen: usize,
    pub reason: StepReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StrategyTrace {
    pub steps: Vec<TraceStep>,
}

/// Outcome of a strategy checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Conforms,
    /// The element at 1-based `step` should have been one of `expected`.
    Violation { step: usize, expected: Vec<usize> },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Conforms)
    }
}

/// Source set of the order ideal `placed`: unplaced elements with all cover
/// predecessors placed. Sorted by index.
pub fn sources(poset: &Poset, placed: &BitSet) -> Result<Vec<usize>, ExtensionError> {
    if !is_down_closed(poset, placed) {
        return Err(ExtensionError::NotAnIdeal);
    }
    Ok((0..poset.len())
        .filter(|&v| !placed.contains(v) && poset.predecessors(v).iter().all(|&u| placed.contains(u)))
        .collect())
}

/// Incrementally maintained source set.
pub(crate) struct Frontier<'p> {
    poset: &'p Poset,
    missing: Vec<usize>,
    sources: Vec<usize>,
}

impl<'p> Frontier<'p> {
    pub(crate) fn new(poset: &'p Poset) -> Self {
        let missing: Vec<usize> = (0..poset.len()).map(|v| poset.predecessors(v).len()).collect();
        let sources = (0..poset.len()).filter(|&v| missing[v] == 0).collect();
        Frontier { poset, missing, sources }
    }

    pub(crate) fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub(crate) fn place(&mut self, v: usize) {
        let i = self
            .sources
            .iter()
            .position(|&s| s == v)
            .expect("placed element must be a source");
        self.sources.remove(i);
        for &w in self.poset.successors(v) {
            self.missing[w] -= 1;
            if self.missing[w] == 0 {
                let at = self.sources.partition_point(|&s| s < w);
                self.sources.insert(at, w);
            }
        }
    }
}

struct Chooser {
    tiebreak: TieBreak,
    rng: Option<ChaCha8Rng>,
    rank: Vec<usize>,
}

impl Chooser {
    fn new(tiebreak: &TieBreak, n: usize) -> Self {
        let rng = match tiebreak {
            TieBreak::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
            _ => None,
        };
        let mut rank = Vec::new();
        if let TieBreak::Preference(pref) = tiebreak {
            rank = vec![usize::MAX; n];
            for (r, &v) in pref.iter().enumerate() {
                if v < n && rank[v] == usize::MAX {
                    rank[v] = r;
                }
            }
        }
        Chooser { tiebreak: tiebreak.clone(), rng, rank }
    }

    fn choose(&mut self, candidates: &[usize]) -> usize {
        match &self.tiebreak {
            TieBreak::MinIndex => candidates[0],
            TieBreak::SeededRandom(_) => *candidates
                .choose(self.rng.as_mut().expect("seeded rng"))
                .expect("non-empty source set"),
            TieBreak::Preference(_) => *candidates
                .iter()
                .min_by_key(|&&v| (self.rank[v], v))
                .expect("non-empty source set"),
        }
    }
}

fn check_decomposition(poset: &Poset, chains: &ChainDecomposition) -> Result<(), ExtensionError> {
    if chains.covers_poset(poset) {
        Ok(())
    } else {
        Err(ExtensionError::InvalidDecomposition)
    }
}

/// Each chain's unplaced remainder has a unique minimum, so no chain can
/// contribute two sources at once.
fn assert_unique_minimum(sources: &[usize], chains: &ChainDecomposition) {
    let mut seen: Vec<usize> = sources.iter().map(|&v| chains.chain_of(v)).collect();
    seen.sort_unstable();
    assert!(
        seen.windows(2).all(|w| w[0] != w[1]),
        "two sources share a chain; decomposition is not a chain partition"
    );
}

#[derive(Clone, Copy)]
enum Strategy {
    Lazy,
    Mru,
}

fn run(
    poset: &Poset,
    chains: &ChainDecomposition,
    tiebreak: &TieBreak,
    strategy: Strategy,
) -> Result<(LinearExtension, StrategyTrace), ExtensionError> {
    check_decomposition(poset, chains)?;
    let n = poset.len();
    let mut frontier = Frontier::new(poset);
    let mut chooser = Chooser::new(tiebreak, n);
    let mut last_used: Vec<Option<usize>> = vec![None; chains.len()];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut trace = StrategyTrace::default();

    for step in 0..n {
        let s = frontier.sources().to_vec();
        assert_unique_minimum(&s, chains);
        let (chosen, reason) = match strategy {
            Strategy::Lazy => {
                let prev_chain = order.last().map(|&p| chains.chain_of(p));
                match s.iter().find(|&&v| Some(chains.chain_of(v)) == prev_chain) {
                    Some(&v) => (v, StepReason::SameChain),
                    None => (chooser.choose(&s), StepReason::TieBreak),
                }
            }
            Strategy::Mru => {
                let recent = s
                    .iter()
                    .filter_map(|&v| last_used[chains.chain_of(v)].map(|t| (t, v)))
                    .max();
                debug_assert_eq!(recent, backward_scan(&order, &s, chains));
                match recent {
                    Some((t, v)) if t + 1 == step => (v, StepReason::SameChain),
                    Some((t, v)) => (v, StepReason::RecentChain(t)),
                    None => (chooser.choose(&s), StepReason::TieBreak),
                }
            }
        };
        last_used[chains.chain_of(chosen)] = Some(step);
        frontier.place(chosen);
        order.push(chosen);
        trace.steps.push(TraceStep { sources: s, chosen, reason });
    }
    Ok((LinearExtension::from_order_unchecked(order), trace))
}

/// Literal MRU rule: scan the placed prefix backwards for the first element
/// whose chain has a source. Returns `(step, source)`.
fn backward_scan(order: &[usize], s: &[usize], chains: &ChainDecomposition) -> Option<(usize, usize)> {
    order.iter().enumerate().rev().find_map(|(j, &p)| {
        s.iter()
            .find(|&&v| chains.chain_of(v) == chains.chain_of(p))
            .map(|&v| (j, v))
    })
}

/// Lazy linear extension: stay in the previous element's chain when possible.
pub fn lazy_extension(
    poset: &Poset,
    chains: &ChainDecomposition,
    tiebreak: &TieBreak,
) -> Result<(LinearExtension, StrategyTrace), ExtensionError> {
    run(poset, chains, tiebreak, Strategy::Lazy)
}

/// MRU extension: take a source from the most recently used chain that has one.
pub fn mru_extension(
    poset: &Poset,
    chains: &ChainDecomposition,
    tiebreak: &TieBreak,
) -> Result<(LinearExtension, StrategyTrace), ExtensionError> {
    run(poset, chains, tiebreak, Strategy::Mru)
}

fn check(
    poset: &Poset,
    chains: &ChainDecomposition,
    order: &[usize],
    strategy: Strategy,
) -> Result<Verdict, ExtensionError> {
    check_decomposition(poset, chains)?;
    LinearExtension::new(poset, order.to_vec())?;
    let mut frontier = Frontier::new(poset);
    let mut last_used: Vec<Option<usize>> = vec![None; chains.len()];
    for (step, &v) in order.iter().enumerate() {
        let s = frontier.sources();
        let expected: Option<usize> = match strategy {
            Strategy::Lazy => step
                .checked_sub(1)
                .map(|p| chains.chain_of(order[p]))
                .and_then(|c| s.iter().copied().find(|&u| chains.chain_of(u) == c)),
            Strategy::Mru => s
                .iter()
                .filter_map(|&u| last_used[chains.chain_of(u)].map(|t| (t, u)))
                .max()
                .map(|(_, u)| u),
        };
        if let Some(e) = expected {
            if e != v {
                return Ok(Verdict::Violation { step: step + 1, expected: vec![e] });
            }
        }
        last_used[chains.chain_of(v)] = Some(step);
        frontier.place(v);
    }
    Ok(Verdict::Conforms)
}

/// Checks the lazy rule at every step; reports the first violating step.
pub fn is_lazy(poset: &Poset, chains: &ChainDecomposition, order: &[usize]) -> Result<Verdict, ExtensionError> {
    check(poset, chains, order, Strategy::Lazy)
}

/// Checks the MRU rule at every step; reports the first violating step.
pub fn is_mru(poset: &Poset, chains: &ChainDecomposition, order: &[usize]) -> Result<Verdict, ExtensionError> {
    check(poset, chains, order, Strategy::Mru)
}

/// A uniformly-random-choice linear extension (each step picks uniformly from `S`).
pub fn random_extension(poset: &Poset, seed: u64) -> LinearExtension {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut frontier = Frontier::new(poset);
    let mut order = Vec::with_capacity(poset.len());
    while let Some(&v) = frontier.sources().choose(&mut rng) {
        frontier.place(v);
        order.push(v);
    }
    LinearExtension::from_order_unchecked(order)
}
