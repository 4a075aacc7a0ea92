//! Detectors for the forbidden configurations of linear extensions.
//!
//! All patterns are relative to a fixed chain decomposition `C`, and `w` is
//! its number of chains. Positions are read from the extension; `≺` below
//! means "earlier in the extension".
//!
//! | id         | configuration                                                              |
//! |------------|----------------------------------------------------------------------------|
//! | `Bbb`      | `r1 ≺ r2 ≺ r3` in one chain, `(r1, r3)` a cover edge                       |
//! | `W2`       | cover edges `(r1, b1)`, `(r2, b2)`, `C(r1)=C(r2)`, `C(b1)=C(b2)`, `r1 ≺ r2 ≺ b2 ≺ b1` |
//! | `Incoming` | `u_1 ≺ … ≺ u_{w-1} ≺ r ≺ b ≺ r_{w-1} ≺ … ≺ r_1`, edges `(u_i, r_i)` into `C(r)`, sources in the other `w-1` chains, `C(b) ≠ C(r)` |
//! | `Bwb`      | `u_1 ≺ … ≺ u_k ⪯ b1 ≺ {u_{k+1}, …, u_w} ≺ b2 ≺ r_k ≺ … ≺ r_1`, edges `(u_i, r_i)` into a chain `R`, `u_1..u_w` in pairwise distinct chains, an `R` element but no `C(b1)` element strictly between `b1` and `b2` |
//!
//! Valid posets never contain `Bbb` or `W2`; lazy extensions avoid
//! `Incoming`; MRU extensions avoid `Bwb`. The first two detectors are only
//! expected to fire on deliberately corrupted inputs whose cover list
//! contains transitive edges.
//!
//! Every detector is polynomial: incoming rainbows are found as longest
//! nested sequences among candidate edges. On inputs that violate the
//! `W2` property a nested sequence may repeat a source chain; only then an
//! exact subset dynamic program over source chains is used.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::poset::{ChainDecomposition, Edge, LinearExtension, Poset};
use crate::rainbow::{max_rainbow, nests};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternId {
    Bbb,
    W2,
    Incoming,
    Bwb,
}

impl PatternId {
    pub fn as_str(self) -> &'static str {
        match self {
            PatternId::Bbb => "BBB",
            PatternId::W2 => "W2",
            PatternId::Incoming => "INCOMING",
            PatternId::Bwb => "BWB",
        }
    }
}

/// A concrete occurrence of a pattern. Rainbows are listed outermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternWitness {
    Bbb {
        r1: usize,
        r2: usize,
        r3: usize,
    },
    W2 {
        r1: usize,
        r2: usize,
        b2: usize,
        b1: usize,
    },
    Incoming {
        rainbow: Vec<Edge>,
        r: usize,
        b: usize,
    },
    Bwb {
        rainbow: Vec<Edge>,
        b1: usize,
        b2: usize,
        /// `u_{k+1}, …, u_w`, ascending by position.
        between: Vec<usize>,
    },
}

impl PatternWitness {
    pub fn pattern_id(&self) -> PatternId {
        match self {
            PatternWitness::Bbb { .. } => PatternId::Bbb,
            PatternWitness::W2 { .. } => PatternId::W2,
            PatternWitness::Incoming { .. } => PatternId::Incoming,
            PatternWitness::Bwb { .. } => PatternId::Bwb,
        }
    }

    /// Elements of the pattern sorted by position in `ext`.
    pub fn elements(&self, ext: &LinearExtension) -> Vec<usize> {
        let mut out = self.elements_unsorted();
        out.sort_unstable_by_key(|&v| ext.position(v));
        out.dedup();
        out
    }

    /// Cover edges that are part of the pattern.
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            PatternWitness::Bbb { r1, r3, .. } => vec![(*r1, *r3)],
            PatternWitness::W2 { r1, r2, b2, b1 } => vec![(*r1, *b1), (*r2, *b2)],
            PatternWitness::Incoming { rainbow, .. } | PatternWitness::Bwb { rainbow, .. } => rainbow.clone(),
        }
    }

    /// Re-checks the witness against the definition of its pattern.
    pub fn validate(&self, poset: &Poset, chains: &ChainDecomposition, ext: &LinearExtension) -> bool {
        let n = poset.len();
        if ext.len() != n || !chains.covers_poset(poset) {
            return false;
        }
        let in_range = self.elements_unsorted().iter().all(|&v| v < n);
        if !in_range {
            return false;
        }
        let pos = |v: usize| ext.position(v);
        let c = |v: usize| chains.chain_of(v);
        let is_cover = |e: &Edge| poset.cover_edges().binary_search(e).is_ok();
        match self {
            PatternWitness::Bbb { r1, r2, r3 } => {
                c(*r1) == c(*r2) && c(*r2) == c(*r3) && pos(*r1) < pos(*r2) && pos(*r2) < pos(*r3) && is_cover(&(*r1, *r3))
            }
            PatternWitness::W2 { r1, r2, b2, b1 } => {
                c(*r1) == c(*r2)
                    && c(*b1) == c(*b2)
                    && pos(*r1) < pos(*r2)
                    && pos(*r2) < pos(*b2)
                    && pos(*b2) < pos(*b1)
                    && is_cover(&(*r1, *b1))
                    && is_cover(&(*r2, *b2))
            }
            PatternWitness::Incoming { rainbow, r, b } => {
                let w = chains.len();
                let red = c(*r);
                let (Some(&(u_in, y_in)), true) = (rainbow.last(), w >= 2) else {
                    return false;
                };
                rainbow.len() == w - 1
                    && rainbow.iter().all(is_cover)
                    && rainbow.iter().all(|&(u, y)| c(y) == red && c(u) != red)
                    && distinct_chains(rainbow.iter().map(|e| e.0), chains)
                    && rainbow.windows(2).all(|p| nests(p[0], p[1], ext))
                    && c(*b) != red
                    && pos(u_in) < pos(*r)
                    && pos(*r) < pos(*b)
                    && pos(*b) < pos(y_in)
            }
            PatternWitness::Bwb { rainbow, b1, b2, between } => {
                let w = chains.len();
                let Some(&(u_in, y_in)) = rainbow.last() else {
                    return false;
                };
                let red = c(y_in);
                let blue = c(*b1);
                let (p1, p2) = (pos(*b1), pos(*b2));
                let gap = &ext.order()[(p1 + 1).min(p2)..p2];
                rainbow.len() + between.len() == w
                    && rainbow.iter().all(is_cover)
                    && rainbow.iter().all(|&(_, y)| c(y) == red)
                    && rainbow.windows(2).all(|p| nests(p[0], p[1], ext))
                    && distinct_chains(rainbow.iter().map(|e| e.0).chain(between.iter().copied()), chains)
                    && c(*b2) == blue
                    && p1 < p2
                    && pos(u_in) <= p1
                    && p2 < pos(y_in)
                    && between.iter().all(|&v| p1 < pos(v) && pos(v) < p2)
                    && gap.iter().all(|&v| c(v) != blue)
                    && gap.iter().any(|&v| c(v) == red)
            }
        }
    }

    fn elements_unsorted(&self) -> Vec<usize> {
        match self {
            PatternWitness::Bbb { r1, r2, r3 } => vec![*r1, *r2, *r3],
            PatternWitness::W2 { r1, r2, b2, b1 } => vec![*r1, *r2, *b2, *b1],
            PatternWitness::Incoming { rainbow, r, b } => {
                let mut v = vec![*r, *b];
                v.extend(rainbow.iter().flat_map(|&(u, y)| [u, y]));
                v
            }
            PatternWitness::Bwb { rainbow, b1, b2, between } => {
                let mut v = vec![*b1, *b2];
                v.extend(rainbow.iter().flat_map(|&(u, y)| [u, y]));
                v.extend(between);
                v
            }
        }
    }
}

fn distinct_chains(vs: impl Iterator<Item = usize>, chains: &ChainDecomposition) -> bool {
    let mut seen = vec![false; chains.len()];
    for v in vs {
        let c = chains.chain_of(v);
        if core::mem::replace(&mut seen[c], true) {
            return false;
        }
    }
    true
}

/// `[r1 … r2 … r3]` with a cover edge `(r1, r3)` inside one chain.
pub fn find_bbb(poset: &Poset, chains: &ChainDecomposition, ext: &LinearExtension) -> Option<PatternWitness> {
    for &(u, v) in poset.cover_edges() {
        let cu = chains.chain_of(u);
        if cu != chains.chain_of(v) {
            continue;
        }
        let (pu, pv) = (ext.position(u), ext.position(v));
        if let Some(&r2) = chains
            .chain(cu)
            .iter()
            .find(|&&x| pu < ext.position(x) && ext.position(x) < pv)
        {
            return Some(PatternWitness::Bbb { r1: u, r2, r3: v });
        }
    }
    None
}

/// Two nested cover edges joining the same ordered pair of chains.
pub fn find_w2(poset: &Poset, chains: &ChainDecomposition, ext: &LinearExtension) -> Option<PatternWitness> {
    let mut groups: HashMap<(usize, usize), Vec<Edge>> = HashMap::new();
    for &(u, v) in poset.cover_edges() {
        groups
            .entry((chains.chain_of(u), chains.chain_of(v)))
            .or_default()
            .push((u, v));
    }
    let mut keys: Vec<_> = groups.keys().copied().collect();
    keys.sort_unstable();
    for key in keys {
        let group = &groups[&key];
        for &outer in group {
            if let Some(&inner) = group.iter().find(|&&inner| nests(outer, inner, ext)) {
                return Some(PatternWitness::W2 {
                    r1: outer.0,
                    r2: inner.0,
                    b2: inner.1,
                    b1: outer.1,
                });
            }
        }
    }
    None
}

/// An incoming `C(r)`-rainbow of size `w-1` from the other chains nesting
/// `[r … b]` with `C(b) ≠ C(r)`. Needs at least two chains.
///
/// It suffices to try `r` at the end of each maximal run of same-chain
/// elements with `b` the element right after it: any occurrence can be
/// shifted to such a pair without breaking the nesting.
pub fn find_incoming_forbidden(
    poset: &Poset,
    chains: &ChainDecomposition,
    ext: &LinearExtension,
) -> Option<PatternWitness> {
    let w = chains.len();
    if w < 2 {
        return None;
    }
    let order = ext.order();
    for p in 0..order.len().saturating_sub(1) {
        let (r, b) = (order[p], order[p + 1]);
        let red = chains.chain_of(r);
        if chains.chain_of(b) == red {
            continue;
        }
        let cands: Vec<Edge> = poset
            .cover_edges()
            .iter()
            .copied()
            .filter(|&(u, y)| {
                chains.chain_of(y) == red
                    && chains.chain_of(u) != red
                    && ext.position(u) < p
                    && ext.position(y) > p + 1
            })
            .collect();
        let mut needed = vec![true; w];
        needed[red] = false;
        if let Some(rainbow) = covering_rainbow(&cands, &needed, chains, ext) {
            return Some(PatternWitness::Incoming { rainbow, r, b });
        }
    }
    None
}

/// The `Bwb` configuration (the innermost source may coincide with `b1`).
///
/// For consecutive elements `b1 ≺ b2` of a chain `B`, let `M` be the chains
/// met strictly between them. The between-elements can always be taken to
/// cover all of `M` (dropping rainbow edges whose source chain lies in `M`
/// keeps a valid rainbow that still has its `B` edge), so the search asks,
/// for each `R ∈ M`, for a nested rainbow into `R` whose sources use every
/// chain outside `M` exactly once.
pub fn find_bwb_forbidden(
    poset: &Poset,
    chains: &ChainDecomposition,
    ext: &LinearExtension,
) -> Option<PatternWitness> {
    let w = chains.len();
    let order = ext.order();
    for blue in 0..w {
        for pair in chains.chain(blue).windows(2) {
            let (b1, b2) = (pair[0], pair[1]);
            let (p1, p2) = (ext.position(b1), ext.position(b2));
            let mut first_in = vec![None; w];
            for &v in &order[p1 + 1..p2] {
                first_in[chains.chain_of(v)].get_or_insert(v);
            }
            let needed: Vec<bool> = first_in.iter().map(Option::is_none).collect();
            let between: Vec<usize> = {
                let mut b: Vec<usize> = first_in.iter().flatten().copied().collect();
                b.sort_unstable_by_key(|&v| ext.position(v));
                b
            };
            for red in (0..w).filter(|&c| first_in[c].is_some()) {
                let cands: Vec<Edge> = poset
                    .cover_edges()
                    .iter()
                    .copied()
                    .filter(|&(u, y)| {
                        chains.chain_of(y) == red
                            && needed[chains.chain_of(u)]
                            && ext.position(u) <= p1
                            && ext.position(y) > p2
                    })
                    .collect();
                if let Some(rainbow) = covering_rainbow(&cands, &needed, chains, ext) {
                    return Some(PatternWitness::Bwb {
                        rainbow,
                        b1,
                        b2,
                        between,
                    });
                }
            }
        }
    }
    None
}

/// A rainbow among `cands` whose source chains are exactly the chains
/// flagged in `needed`, each once. Candidates must already have sources in
/// needed chains.
fn covering_rainbow(
    cands: &[Edge],
    needed: &[bool],
    chains: &ChainDecomposition,
    ext: &LinearExtension,
) -> Option<Vec<Edge>> {
    let k = needed.iter().filter(|&&x| x).count();
    if k == 0 {
        return None;
    }
    let (best, cert) = max_rainbow(ext, cands);
    if best < k {
        return None;
    }
    // Fast path: on posets without the W2 configuration nested edges into one
    // chain have distinct source chains, so any k consecutive edges work.
    if let Some(win) = cert
        .edges
        .windows(k)
        .find(|win| distinct_chains(win.iter().map(|e| e.0), chains))
    {
        return Some(win.to_vec());
    }
    exact_covering_rainbow(cands, needed, chains, ext)
}

/// Subset dynamic program over source chains, outermost edge first.
fn exact_covering_rainbow(
    cands: &[Edge],
    needed: &[bool],
    chains: &ChainDecomposition,
    ext: &LinearExtension,
) -> Option<Vec<Edge>> {
    let mut bit = vec![usize::MAX; needed.len()];
    let mut k = 0;
    for (c, _) in needed.iter().enumerate().filter(|(_, &x)| x) {
        bit[c] = k;
        k += 1;
    }
    if k > 63 {
        return None;
    }
    let full: u64 = (1u64 << k) - 1;
    let mut idx: Vec<usize> = (0..cands.len()).collect();
    idx.sort_unstable_by_key(|&i| (ext.position(cands[i].0), core::cmp::Reverse(ext.position(cands[i].1))));
    let edges: Vec<Edge> = idx.iter().map(|&i| cands[i]).collect();
    let own: Vec<u64> = edges.iter().map(|e| 1u64 << bit[chains.chain_of(e.0)]).collect();
    // states[j]: masks of rainbows with innermost edge j, with the predecessor state
    let mut states: Vec<HashMap<u64, Option<(usize, u64)>>> = Vec::with_capacity(edges.len());
    for j in 0..edges.len() {
        let mut here: HashMap<u64, Option<(usize, u64)>> = HashMap::new();
        here.insert(own[j], None);
        for i in 0..j {
            if !nests(edges[i], edges[j], ext) {
                continue;
            }
            for &m in states[i].keys() {
                if m & own[j] == 0 {
                    here.entry(m | own[j]).or_insert(Some((i, m)));
                }
            }
        }
        states.push(here);
        if states[j].contains_key(&full) {
            let mut out = vec![edges[j]];
            let (mut cur, mut mask) = (j, full);
            while let Some((i, m)) = states[cur][&mask] {
                out.push(edges[i]);
                cur = i;
                mask = m;
            }
            out.reverse();
            return Some(out);
        }
    }
    None
}
