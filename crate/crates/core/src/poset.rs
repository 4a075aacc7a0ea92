//! Canonical poset representation.
//!
//! A [`Poset`] is stored as its cover graph plus the strict down-set of every
//! element. Elements are opaque names mapped to dense indices `0..n` in
//! declaration order; every algorithm in the crate works on those indices.

use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bitset::BitSet;

/// A directed cover edge `(u, v)`: `u` is covered by `v`.
pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relations induce a directed cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("order is not a permutation of the elements")]
    NotAPermutation,
    #[error("not a linear extension: `{before}` must precede `{after}`")]
    NotALinearExtension { before: String, after: String },
    #[error("invalid chain decomposition: {0}")]
    InvalidDecomposition(String),
}

/// A directed cycle, as a closed walk of vertex indices (first vertex repeated at the end).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("directed cycle through {} vertices", .0.len().saturating_sub(1))]
pub struct CycleError(pub Vec<usize>);

#[derive(Debug, Clone)]
pub struct Poset {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    covers: Vec<Edge>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    below: Vec<BitSet>,
    topo: Vec<usize>,
    topo_rank: Vec<usize>,
    redundant_input: bool,
}

impl Poset {
    /// Builds a poset from named elements and generating relations.
    ///
    /// The closure of `relations` is the order; the cover edges are its
    /// transitive reduction. Transitive or repeated input pairs are accepted
    /// and dropped, which sets [`Poset::had_redundant_relations`].
    pub fn build<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Poset, PosetError> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_names(&names)?;
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| PosetError::UnknownElement(s.as_ref().to_string()))
        };
        let mut edges = Vec::with_capacity(relations.len());
        for (u, v) in relations {
            edges.push((lookup(u)?, lookup(v)?));
        }
        Self::assemble(names, index, &edges, true)
    }

    /// Index-based variant of [`Poset::build`]; `edges` refer to positions in `names`.
    pub fn from_indexed(names: Vec<String>, edges: &[Edge]) -> Result<Poset, PosetError> {
        let index = index_names(&names)?;
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= names.len() || v >= names.len()) {
            return Err(PosetError::UnknownElement(format!("#{}", u.max(v))));
        }
        Self::assemble(names, index, edges, true)
    }

    /// Takes `edges` verbatim as the cover graph, even if some are transitive.
    ///
    /// Only meant for exercising detectors on deliberately corrupted inputs.
    #[doc(hidden)]
    pub fn from_cover_edges_unchecked(names: Vec<String>, edges: &[Edge]) -> Result<Poset, PosetError> {
        let index = index_names(&names)?;
        Self::assemble(names, index, edges, false)
    }

    fn assemble(
        names: Vec<String>,
        index: BTreeMap<String, usize>,
        edges: &[Edge],
        reduce: bool,
    ) -> Result<Poset, PosetError> {
        let n = names.len();
        let mut dedup: Vec<Edge> = edges.to_vec();
        dedup.sort_unstable();
        dedup.dedup();
        let had_duplicates = dedup.len() != edges.len();

        let closure = Closure::compute(n, &dedup).map_err(|CycleError(cycle)| {
            PosetError::Cycle(cycle.iter().map(|&i| names[i].clone()).collect())
        })?;
        let covers = if reduce { closure.reduce(&dedup) } else { dedup.clone() };
        let redundant_input = had_duplicates || covers.len() != dedup.len();

        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(u, v) in &covers {
            succ[u].push(v);
            pred[v].push(u);
        }
        let mut topo_rank = vec![0; n];
        for (r, &v) in closure.topo.iter().enumerate() {
            topo_rank[v] = r;
        }
        Ok(Poset {
            names,
            index,
            covers,
            succ,
            pred,
            below: closure.below,
            topo: closure.topo,
            topo_rank,
            redundant_input,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn lookup(&self, name: &str) -> Result<usize, PosetError> {
        self.index_of(name)
            .ok_or_else(|| PosetError::UnknownElement(name.to_string()))
    }

    /// Cover edges, sorted lexicographically by index.
    pub fn cover_edges(&self) -> &[Edge] {
        &self.covers
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    /// True when the input relations contained transitive or duplicate pairs.
    pub fn had_redundant_relations(&self) -> bool {
        self.redundant_input
    }

    /// Strict order: `u < v`.
    #[inline]
    pub fn less(&self, u: usize, v: usize) -> bool {
        self.below[v].contains(u)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.less(u, v) || self.less(v, u)
    }

    /// Strict down-set of `v`.
    pub fn down_set(&self, v: usize) -> &BitSet {
        &self.below[v]
    }

    /// All comparable pairs `(u, v)` with `u < v`.
    pub fn closure_pairs(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for v in 0..self.len() {
            out.extend(self.below[v].iter().map(|u| (u, v)));
        }
        out.sort_unstable();
        out
    }

    /// A fixed topological order (Kahn's algorithm, smallest index first).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub(crate) fn topo_rank(&self, v: usize) -> usize {
        self.topo_rank[v]
    }

    /// Size of a largest antichain.
    pub fn width(&self) -> usize {
        self.len() - self.max_comparability_matching().iter().flatten().count()
    }

    /// Minimum chain decomposition derived from a maximum matching in the
    /// split comparability graph. Deterministic for a fixed element indexing.
    pub fn chain_decomposition(&self) -> ChainDecomposition {
        let n = self.len();
        // next_of[u] = v when u -> v is a matching edge
        let mut next_of: Vec<Option<usize>> = vec![None; n];
        let mut has_prev = vec![false; n];
        for (v, m) in self.max_comparability_matching().iter().enumerate() {
            if let Some(u) = *m {
                next_of[u] = Some(v);
                has_prev[v] = true;
            }
        }
        let mut chains = Vec::new();
        for head in (0..n).filter(|&u| !has_prev[u]) {
            let mut chain = vec![head];
            let mut cur = head;
            while let Some(nx) = next_of[cur] {
                chain.push(nx);
                cur = nx;
            }
            chains.push(chain);
        }
        ChainDecomposition::from_sorted_chains(n, chains)
    }

    /// Maximum matching between "left" and "right" copies of the elements,
    /// with `u -> v` allowed iff `u < v`. Returns the left partner of each right vertex.
    fn max_comparability_matching(&self) -> Vec<Option<usize>> {
        let n = self.len();
        let above: Vec<Vec<usize>> = {
            let mut a = vec![Vec::new(); n];
            for v in 0..n {
                for u in self.below[v].iter() {
                    a[u].push(v);
                }
            }
            a
        };
        let mut match_right: Vec<Option<usize>> = vec![None; n];
        let mut match_left: Vec<Option<usize>> = vec![None; n];
        for u in 0..n {
            if let Some(&v) = above[u].iter().find(|&&v| match_right[v].is_none()) {
                match_right[v] = Some(u);
                match_left[u] = Some(v);
            }
        }
        let mut seen = vec![usize::MAX; n];
        for u in 0..n {
            if match_left[u].is_none() {
                augment(u, u, &above, &mut match_left, &mut match_right, &mut seen);
            }
        }
        match_right
    }
}

fn augment(
    u: usize,
    stamp: usize,
    above: &[Vec<usize>],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
    seen: &mut [usize],
) -> bool {
    // iterative DFS over alternating paths
    let mut stack: Vec<(usize, usize)> = vec![(u, 0)];
    let mut path: Vec<usize> = Vec::new();
    while let Some(&mut (x, ref mut i)) = stack.last_mut() {
        if *i >= above[x].len() {
            stack.pop();
            path.pop();
            continue;
        }
        let v = above[x][*i];
        *i += 1;
        if seen[v] == stamp {
            continue;
        }
        seen[v] = stamp;
        path.push(v);
        match match_right[v] {
            None => {
                // flip the path
                for (k, &(lx, _)) in stack.iter().enumerate() {
                    let rv = path[k];
                    match_right[rv] = Some(lx);
                    match_left[lx] = Some(rv);
                }
                return true;
            }
            Some(next) => stack.push((next, 0)),
        }
    }
    false
}

fn index_names(names: &[String]) -> Result<BTreeMap<String, usize>, PosetError> {
    let mut index = BTreeMap::new();
    for (i, s) in names.iter().enumerate() {
        if index.insert(s.clone(), i).is_some() {
            return Err(PosetError::DuplicateElement(s.clone()));
        }
    }
    Ok(index)
}

struct Closure {
    topo: Vec<usize>,
    below: Vec<BitSet>,
    pred: Vec<Vec<usize>>,
}

impl Closure {
    fn compute(n: usize, edges: &[Edge]) -> Result<Closure, CycleError> {
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(CycleError(vec![u, u]));
            }
            succ[u].push(v);
            pred[v].push(u);
        }
        let topo = topological_sort(&succ, &pred).map_err(|_| find_cycle(&succ))?;
        let mut below = vec![BitSet::new(n); n];
        for &v in &topo {
            let mut set = BitSet::new(n);
            for &u in &pred[v] {
                set.union_with(&below[u]);
                set.insert(u);
            }
            below[v] = set;
        }
        Ok(Closure { topo, below, pred })
    }

    /// Keeps `(u, v)` iff no other predecessor `w` of `v` has `u < w`.
    fn reduce(&self, edges: &[Edge]) -> Vec<Edge> {
        edges
            .iter()
            .copied()
            .filter(|&(u, v)| !self.pred[v].iter().any(|&w| w != u && self.below[w].contains(u)))
            .collect()
    }
}

fn topological_sort(succ: &[Vec<usize>], pred: &[Vec<usize>]) -> Result<Vec<usize>, ()> {
    let n = succ.len();
    let mut indeg: Vec<usize> = pred.iter().map(Vec::len).collect();
    let mut ready: alloc::collections::BinaryHeap<core::cmp::Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(core::cmp::Reverse).collect();
    let mut topo = Vec::with_capacity(n);
    while let Some(core::cmp::Reverse(u)) = ready.pop() {
        topo.push(u);
        for &v in &succ[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(core::cmp::Reverse(v));
            }
        }
    }
    if topo.len() == n {
        Ok(topo)
    } else {
        Err(())
    }
}

fn find_cycle(succ: &[Vec<usize>]) -> CycleError {
    let n = succ.len();
    // 0 = unvisited, 1 = on the DFS stack, 2 = finished
    let mut state = vec![0u8; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            let Some(&v) = succ[u].get(*i) else {
                state[u] = 2;
                stack.pop();
                continue;
            };
            *i += 1;
            match state[v] {
                0 => {
                    state[v] = 1;
                    stack.push((v, 0));
                }
                1 => {
                    let from = stack.iter().position(|&(x, _)| x == v).unwrap_or(0);
                    let mut walk: Vec<usize> = stack[from..].iter().map(|&(x, _)| x).collect();
                    walk.push(v);
                    return CycleError(walk);
                }
                _ => {}
            }
        }
    }
    CycleError(Vec::new())
}

/// Transitive reduction of a DAG on vertices `0..n`.
///
/// Returns the unique minimal edge set with the same reachability, sorted.
pub fn transitive_reduction(n: usize, edges: &[Edge]) -> Result<Vec<Edge>, CycleError> {
    let mut dedup = edges.to_vec();
    dedup.sort_unstable();
    dedup.dedup();
    Ok(Closure::compute(n, &dedup)?.reduce(&dedup))
}

/// Partition of the elements into chains, each sorted ascending by the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    chain_of: Vec<usize>,
    chains: Vec<Vec<usize>>,
}

impl ChainDecomposition {
    /// Validates a user-supplied partition into chains; chain members may be
    /// listed in any order and are sorted by the poset order.
    pub fn new(poset: &Poset, chains: Vec<Vec<usize>>) -> Result<Self, PosetError> {
        let n = poset.len();
        let mut chain_of = vec![usize::MAX; n];
        let mut sorted = Vec::with_capacity(chains.len());
        for (ci, mut chain) in chains.into_iter().enumerate() {
            if chain.is_empty() {
                return Err(PosetError::InvalidDecomposition(format!("chain {} is empty", ci + 1)));
            }
            for &v in &chain {
                if v >= n {
                    return Err(PosetError::UnknownElement(format!("#{v}")));
                }
                if chain_of[v] != usize::MAX {
                    return Err(PosetError::InvalidDecomposition(format!(
                        "`{}` appears in more than one chain",
                        poset.name(v)
                    )));
                }
                chain_of[v] = ci;
            }
            chain.sort_by_key(|&v| poset.topo_rank(v));
            if let Some(w) = chain.windows(2).find(|w| !poset.less(w[0], w[1])) {
                return Err(PosetError::InvalidDecomposition(format!(
                    "`{}` and `{}` share chain {} but are incomparable",
                    poset.name(w[0]),
                    poset.name(w[1]),
                    ci + 1
                )));
            }
            sorted.push(chain);
        }
        if let Some(v) = chain_of.iter().position(|&c| c == usize::MAX) {
            return Err(PosetError::InvalidDecomposition(format!(
                "`{}` is not covered by any chain",
                poset.name(v)
            )));
        }
        Ok(ChainDecomposition { chain_of, chains: sorted })
    }

    pub fn from_names<S: AsRef<str>>(poset: &Poset, chains: &[Vec<S>]) -> Result<Self, PosetError> {
        let idx = chains
            .iter()
            .map(|c| c.iter().map(|s| poset.lookup(s.as_ref())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(poset, idx)
    }

    fn from_sorted_chains(n: usize, chains: Vec<Vec<usize>>) -> Self {
        let mut chain_of = vec![0; n];
        for (ci, c) in chains.iter().enumerate() {
            for &v in c {
                chain_of[v] = ci;
            }
        }
        ChainDecomposition { chain_of, chains }
    }

    /// Number of chains.
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// 0-based chain index of `v`.
    #[inline]
    pub fn chain_of(&self, v: usize) -> usize {
        self.chain_of[v]
    }

    pub fn chain(&self, c: usize) -> &[usize] {
        &self.chains[c]
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub(crate) fn covers_poset(&self, poset: &Poset) -> bool {
        self.chain_of.len() == poset.len()
    }
}

/// A total order of all elements compatible with the poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearExtension {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl LinearExtension {
    pub fn new(poset: &Poset, order: Vec<usize>) -> Result<Self, PosetError> {
        let position = permutation_positions(poset.len(), &order)?;
        if let Some(&(u, v)) = poset
            .cover_edges()
            .iter()
            .find(|&&(u, v)| position[u] > position[v])
        {
            return Err(PosetError::NotALinearExtension {
                before: poset.name(u).to_string(),
                after: poset.name(v).to_string(),
            });
        }
        Ok(LinearExtension { order, position })
    }

    pub fn from_names<S: AsRef<str>>(poset: &Poset, order: &[S]) -> Result<Self, PosetError> {
        let idx = order
            .iter()
            .map(|s| poset.lookup(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(poset, idx)
    }

    pub(crate) fn from_order_unchecked(order: Vec<usize>) -> Self {
        let mut position = vec![0; order.len()];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        LinearExtension { order, position }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// 0-based rank of `v`.
    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn names<'a>(&self, poset: &'a Poset) -> Vec<&'a str> {
        self.order.iter().map(|&v| poset.name(v)).collect()
    }
}

fn permutation_positions(n: usize, order: &[usize]) -> Result<Vec<usize>, PosetError> {
    if order.len() != n {
        return Err(PosetError::NotAPermutation);
    }
    let mut position = vec![usize::MAX; n];
    for (p, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(PosetError::NotAPermutation);
        }
        position[v] = p;
    }
    Ok(position)
}

/// True iff `order` respects every comparability of `poset`.
pub fn is_linear_extension(poset: &Poset, order: &[usize]) -> Result<bool, PosetError> {
    let position = permutation_positions(poset.len(), order)?;
    Ok(poset
        .cover_edges()
        .iter()
        .all(|&(u, v)| position[u] < position[v]))
}

/// Breadth-first check that `placed` is closed under taking smaller elements.
pub(crate) fn is_down_closed(poset: &Poset, placed: &BitSet) -> bool {
    let mut queue: VecDeque<usize> = placed.iter().collect();
    while let Some(v) = queue.pop_front() {
        if poset.predecessors(v).iter().any(|&u| !placed.contains(u)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn transitive_input_is_reduced_with_warning() {
        let p = Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(p.cover_edges(), &[(0, 1), (1, 2)]);
        assert!(p.had_redundant_relations());
        assert!(p.less(0, 2));
        assert_eq!(p.width(), 1);
    }

    #[test]
    fn antichain_has_full_width() {
        let p = Poset::build::<&str>(&["a", "b"], &[]).unwrap();
        assert!(p.cover_edges().is_empty());
        assert!(!p.had_redundant_relations());
        assert_eq!(p.width(), 2);
    }

    #[test]
    fn three_cycle_is_rejected_and_named() {
        let err = Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap_err();
        match err {
            PosetError::Cycle(c) => {
                assert_eq!(c.len(), 4);
                assert_eq!(c.first(), c.last());
                let p = Poset::build::<&str>(&["a", "b", "c"], &[]).unwrap();
                let idx: Vec<usize> = c.iter().map(|s| p.index_of(s).unwrap()).collect();
                let edges = [(0, 1), (1, 2), (2, 0)];
                assert!(idx.windows(2).all(|w| edges.contains(&(w[0], w[1]))));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn self_loop_and_unknown_element() {
        assert!(matches!(
            Poset::build(&["a"], &[("a", "a")]),
            Err(PosetError::Cycle(_))
        ));
        assert_eq!(
            Poset::build(&["a"], &[("a", "z")]).unwrap_err(),
            PosetError::UnknownElement("z".into())
        );
        assert_eq!(
            Poset::build::<&str>(&["a", "a"], &[]).unwrap_err(),
            PosetError::DuplicateElement("a".into())
        );
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(
            transitive_reduction(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(),
            vec![(0, 1), (1, 2)]
        );
        let diamond = [(0, 1), (0, 2), (1, 3), (2, 3)];
        assert_eq!(transitive_reduction(4, &diamond).unwrap(), diamond.to_vec());
        assert!(transitive_reduction(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn widths() {
        let chain = Poset::from_indexed(names(&["a", "b", "c", "d", "e"]), &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(chain.width(), 1);
        let anti = Poset::from_indexed(names(&["a", "b", "c", "d"]), &[]).unwrap();
        assert_eq!(anti.width(), 4);
        // five-vertex base poset of the lazy lower bound family
        let base = Poset::from_indexed(
            names(&["v1", "v2", "v3", "v4", "v5"]),
            &[(0, 1), (0, 4), (2, 3), (3, 4)],
        )
        .unwrap();
        assert_eq!(base.width(), 2);
    }

    #[test]
    fn chain_decompositions() {
        let anti = Poset::from_indexed(names(&["a", "b", "c"]), &[]).unwrap();
        let d = anti.chain_decomposition();
        assert_eq!(d.chains(), &[vec![0], vec![1], vec![2]]);
        let chain = Poset::from_indexed(names(&["a", "b", "c", "d"]), &[(2, 3), (1, 2), (0, 1)]).unwrap();
        assert_eq!(chain.chain_decomposition().chains(), &[vec![0, 1, 2, 3]]);
        assert!(Poset::from_indexed(Vec::new(), &[]).unwrap().chain_decomposition().is_empty());
    }

    #[test]
    fn user_decomposition_validation() {
        let p = Poset::build(&["a", "b", "x"], &[("a", "b")]).unwrap();
        let d = ChainDecomposition::from_names(&p, &[vec!["b", "a"], vec!["x"]]).unwrap();
        assert_eq!(d.chain(0), &[0, 1]);
        assert!(ChainDecomposition::from_names(&p, &[vec!["a", "x"], vec!["b"]]).is_err());
        assert!(ChainDecomposition::from_names(&p, &[vec!["a", "b"]]).is_err());
        assert!(ChainDecomposition::from_names(&p, &[vec!["a", "b"], vec!["x", "a"]]).is_err());
    }

    #[test]
    fn linear_extension_checks() {
        let p = Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(is_linear_extension(&p, &[0, 1, 2]).unwrap());
        assert!(!is_linear_extension(&p, &[1, 0, 2]).unwrap());
        assert_eq!(is_linear_extension(&p, &[0, 0, 2]), Err(PosetError::NotAPermutation));
        assert_eq!(is_linear_extension(&p, &[0, 1]), Err(PosetError::NotAPermutation));
        assert!(matches!(
            LinearExtension::from_names(&p, &["b", "a", "c"]),
            Err(PosetError::NotALinearExtension { .. })
        ));
    }

    #[test]
    fn empty_poset() {
        let p = Poset::from_indexed(Vec::new(), &[]).unwrap();
        assert_eq!(p.width(), 0);
        assert!(LinearExtension::new(&p, Vec::new()).unwrap().is_empty());
    }
}
