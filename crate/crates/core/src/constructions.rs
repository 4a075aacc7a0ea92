//! Explicit poset families with their chain decompositions and, where one is
//! known, an extension realising a large rainbow.
//!
//! Vertex names are stable and human readable: `v(i,j)` and `vbar(i,j)` for
//! the layered families (suffixed `@k` with the level `k` that created them
//! in [`gen_lazy_lb`] and [`gen_mru_lb`]), `a1..ap`, `b1..bq`, `c1..cp` for
//! the three-chain family and `G1.x`, `G2.x`, `s`, `v`, `t` for lifts.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::poset::{ChainDecomposition, Edge, LinearExtension, Poset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("width must be even, got {0}")]
    OddWidth(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("cannot lift an empty poset")]
    EmptyPoset,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    General,
    LazyLb,
    MruLb,
    Counterexample,
    CounterexampleTilde,
    Lifted,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::General => "general",
            Family::LazyLb => "lazy_lb",
            Family::MruLb => "mru_lb",
            Family::Counterexample => "counterexample",
            Family::CounterexampleTilde => "counterexample_tilde",
            Family::Lifted => "lifted",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstructionBundle {
    pub poset: Poset,
    pub chains: ChainDecomposition,
    pub prescribed_extension: Option<LinearExtension>,
    /// Rainbow size of the prescribed extension.
    pub expected_rainbow: Option<usize>,
    pub family: Family,
    /// Generator parameters in call order, e.g. `[("p", 6), ("q", 2)]`.
    pub params: Vec<(&'static str, usize)>,
}

/// Incrementally assembled named poset.
#[derive(Default)]
struct Builder {
    names: Vec<String>,
    edges: Vec<Edge>,
}

impl Builder {
    fn add(&mut self, name: String) -> usize {
        self.names.push(name);
        self.names.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn path(&mut self, vs: &[usize]) {
        for p in vs.windows(2) {
            self.edge(p[0], p[1]);
        }
    }

    /// The cover list is taken as given, so a generator bug that introduces a
    /// transitive edge shows up in `had_redundant_relations` instead of being
    /// silently reduced away.
    fn finish(
        self,
        chains: Vec<Vec<usize>>,
        order: Option<Vec<usize>>,
        expected_rainbow: Option<usize>,
        family: Family,
        params: Vec<(&'static str, usize)>,
    ) -> Result<ConstructionBundle, ConstructionError> {
        let poset = Poset::from_indexed(self.names, &self.edges)?;
        let chains = ChainDecomposition::new(&poset, chains)?;
        let prescribed_extension = order.map(|o| LinearExtension::new(&poset, o)).transpose()?;
        Ok(ConstructionBundle {
            poset,
            chains,
            prescribed_extension,
            expected_rainbow,
            family,
            params,
        })
    }
}

/// `w` chains of length `2w` with an extension whose cover graph has a
/// rainbow of size `w²`. Only even `w` is supported.
pub fn gen_general(w: usize) -> Result<ConstructionBundle, ConstructionError> {
    if w % 2 == 1 {
        return Err(ConstructionError::OddWidth(w));
    }
    if w == 0 {
        return Err(ConstructionError::InvalidParameters("w must be at least 2".into()));
    }
    let len = 2 * w;
    let mut b = Builder::default();
    for i in 1..=w {
        for j in 1..=len {
            b.add(format!("v({i},{j})"));
        }
    }
    let v = |i: usize, j: usize| (i - 1) * len + (j - 1);
    let chains: Vec<Vec<usize>> = (1..=w).map(|i| (1..=len).map(|j| v(i, j)).collect()).collect();
    for c in &chains {
        b.path(c);
    }
    // The outgoing target sits at index 2w-i+2. With 2w-i+1, chain w would
    // hit the middle-edge target v(i-k, w+1) and the S-to-T edges would no
    // longer form a matching.
    for i in 1..=w {
        for k in 1..i {
            b.edge(v(i, k), v(i - k, len - i + 2));
            b.edge(v(k, w - i + k), v(i, len - k + 1));
        }
    }
    // first w-1 elements of every chain chain by chain, then the w-th
    // elements in reverse chain order, then the upper halves round-robin
    let key = |i: usize, j: usize| -> usize {
        if j < w {
            (i - 1) * (w - 1) + j
        } else if j == w {
            w * (w - 1) + w - (i - 1)
        } else {
            w * w + (j - w) * w + (i - 1)
        }
    };
    let mut order: Vec<usize> = (0..w * len).collect();
    order.sort_by_key(|&x| key(x / len + 1, x % len + 1));
    b.finish(chains, Some(order), Some(w * w), Family::General, vec![("w", w)])
}

/// Level-by-level state of the recursive families.
struct Layered {
    b: Builder,
    /// Chains bottom to top in their current labelling.
    chains: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl Layered {
    fn base() -> Self {
        let mut b = Builder::default();
        let v: Vec<usize> = (1..=5).map(|i| b.add(format!("v{i}"))).collect();
        for (x, y) in [(0, 1), (0, 4), (2, 3), (3, 4)] {
            b.edge(v[x], v[y]);
        }
        Layered {
            b,
            chains: vec![vec![v[0], v[1]], vec![v[2], v[3], v[4]]],
            order: v,
        }
    }
}

/// Vertices added to old chain `i` when growing to width `w`.
struct Rim {
    /// `v(i,1), v(i,2)` and, for chain 1, `vbar(1,2)`.
    low: Vec<usize>,
    /// For chain `w-1` `vbar(w-1,3)`, then `v(i,3), v(i,4)`.
    high: Vec<usize>,
}

/// Adds the vertices and edges shared by both recursive families. Returns
/// per old chain the added vertices (1-based index `i` at position `i-1`) and
/// the new chain `C_w` without its optional head.
fn grow_common(state: &mut Layered, w: usize, mru: bool) -> (Vec<Rim>, Vec<usize>) {
    let b = &mut state.b;
    let old = &state.chains;
    let k = w - 1;
    let mut rims = Vec::with_capacity(k);
    for i in 1..=k {
        let mut low = vec![b.add(format!("v({i},1)@{w}")), b.add(format!("v({i},2)@{w}"))];
        if i == 1 {
            low.push(b.add(format!("vbar(1,2)@{w}")));
        }
        let mut high = Vec::new();
        if i == k {
            high.push(b.add(format!("vbar({k},3)@{w}")));
        }
        high.push(b.add(format!("v({i},3)@{w}")));
        high.push(b.add(format!("v({i},4)@{w}")));
        rims.push(Rim { low, high });
    }
    let cw: Vec<usize> = (1..=2 * w - 2).map(|j| b.add(format!("v({w},{j})@{w}"))).collect();
    b.path(&cw);

    let first = |i: usize| old[i - 1][0];
    let last = |i: usize| *old[i - 1].last().unwrap();
    let v3 = |rims: &[Rim], i: usize| rims[i - 1].high[rims[i - 1].high.len() - 2];
    let v4 = |rims: &[Rim], i: usize| *rims[i - 1].high.last().unwrap();
    let vbar12 = rims[0].low[2];
    let vbar3 = rims[k - 1].high[0];

    for i in 1..=k {
        b.path(&rims[i - 1].low);
        if i == 1 {
            for j in 1..=k {
                b.edge(vbar12, first(j));
            }
        } else {
            b.edge(rims[i - 1].low[1], first(i));
        }
        if i < k {
            b.edge(last(i), v3(&rims, i));
            b.edge(v3(&rims, i), v4(&rims, i));
        }
    }
    b.edge(last(k), vbar3);
    for i in 1..=k {
        b.edge(vbar3, v3(&rims, i));
        b.edge(v3(&rims, i), v4(&rims, k));
    }
    if mru {
        for i in 1..k {
            for j in i + 1..k {
                b.edge(v3(&rims, i), v4(&rims, j));
            }
        }
    }
    // orange edges out of C_w into the top of the old chains
    for i in 1..=k {
        b.edge(cw[i - 1], v4(&rims, w - i));
    }
    // orange edges into the top half of C_w
    for i in 1..=k {
        let src = if mru && i == 1 { vbar12 } else { rims[i - 1].low[0] };
        let j = if mru && i > 1 { 2 * w - i } else { w + i - 1 };
        b.edge(src, cw[j - 1]);
    }
    (rims, cw)
}

fn chain_with_rim(old: &[usize], rim: &Rim) -> Vec<usize> {
    rim.low.iter().chain(old).chain(&rim.high).copied().collect()
}

/// Recursive family whose prescribed extension is lazy and has a rainbow of
/// size `w² - w`. It has `3w² - w - 5` elements.
pub fn gen_lazy_lb(w: usize) -> Result<ConstructionBundle, ConstructionError> {
    if w < 2 {
        return Err(ConstructionError::InvalidParameters("w must be at least 2".into()));
    }
    let mut st = Layered::base();
    for level in 3..=w {
        let k = level - 1;
        let (rims, cw) = grow_common(&mut st, level, false);
        let mut order = cw[..k].to_vec();
        for i in (1..=k).rev() {
            order.extend(&rims[i - 1].low);
        }
        order.extend(&st.order);
        order.extend(&rims[k - 1].high[..2]);
        order.extend(&cw[k..]);
        for i in 1..k {
            order.extend(&rims[i - 1].high);
        }
        order.push(*rims[k - 1].high.last().unwrap());

        let grown: Vec<Vec<usize>> = st.chains.iter().zip(&rims).map(|(c, r)| chain_with_rim(c, r)).collect();
        // relabel so the extension starts in chain 1 and ends in chain w
        let mut chains = vec![cw];
        chains.extend(grown[..k - 1].iter().cloned());
        chains.push(grown[k - 1].clone());
        st.chains = chains;
        st.order = order;
    }
    let Layered { b, chains, order } = st;
    b.finish(chains, Some(order), Some(w * w - w), Family::LazyLb, vec![("w", w)])
}

/// Recursive family whose prescribed extension is MRU and has a rainbow of
/// size `(w-1)² + 1`. It has `3w² - 7` elements.
pub fn gen_mru_lb(w: usize) -> Result<ConstructionBundle, ConstructionError> {
    if w < 2 {
        return Err(ConstructionError::InvalidParameters("w must be at least 2".into()));
    }
    let mut st = Layered::base();
    for level in 3..=w {
        let k = level - 1;
        let (rims, mut cw) = grow_common(&mut st, level, true);
        let head = st.b.add(format!("v({level},0)@{level}"));
        st.b.edge(head, cw[0]);
        for rim in &rims {
            st.b.edge(head, rim.low[1]);
        }
        let mut order: Vec<usize> = rims.iter().map(|r| r.low[0]).collect();
        order.push(head);
        order.extend(&cw[..k]);
        for i in (1..=k).rev() {
            order.extend(&rims[i - 1].low[1..]);
        }
        order.extend(&st.order);
        order.push(rims[k - 1].high[0]);
        for i in (1..=k).rev() {
            let h = &rims[i - 1].high;
            order.push(h[h.len() - 2]);
        }
        order.extend(rims.iter().map(|r| *r.high.last().unwrap()));
        order.extend(&cw[k..]);

        let mut chains: Vec<Vec<usize>> = st.chains.iter().zip(&rims).map(|(c, r)| chain_with_rim(c, r)).collect();
        cw.insert(0, head);
        chains.push(cw);
        st.chains = chains;
        st.order = order;
    }
    let Layered { b, chains, order } = st;
    let e = (w - 1) * (w - 1) + 1;
    b.finish(chains, Some(order), Some(e), Family::MruLb, vec![("w", w)])
}

/// The three-chain family `G(p,q)` (or `G̃(p,q)` with `tilde`).
pub fn gen_counterexample(p: usize, q: usize, tilde: bool) -> Result<ConstructionBundle, ConstructionError> {
    if q < 1 || p < q || p < 4 {
        return Err(ConstructionError::InvalidParameters(format!(
            "need p >= q >= 1 and p >= 4, got p={p}, q={q}"
        )));
    }
    let mut b = Builder::default();
    let a: Vec<usize> = (1..=p).map(|i| b.add(format!("a{i}"))).collect();
    let bs: Vec<usize> = (1..=q).map(|i| b.add(format!("b{i}"))).collect();
    let c: Vec<usize> = (1..=p).map(|i| b.add(format!("c{i}"))).collect();
    b.path(&a);
    b.path(&bs);
    b.path(&c);
    for i in 0..p - 3 {
        b.edge(a[i], c[i + 3]);
        b.edge(c[i], a[i + 3]);
    }
    for i in 0..q {
        b.edge(a[i], bs[i]);
        b.edge(c[i], bs[i]);
    }
    if tilde {
        b.edge(bs[0], a[p - 1]);
        b.edge(bs[0], c[p - 1]);
    }
    let family = if tilde { Family::CounterexampleTilde } else { Family::Counterexample };
    b.finish(vec![a, bs, c], None, None, family, vec![("p", p), ("q", q)])
}

/// Two copies `G1`, `G2` of `poset` with every sink of `G1` below every
/// source of `G2`, plus a chain `s < v < t` with `s` below every source of
/// `G1` and `t` above every sink of `G2`. The width grows by one.
///
/// Without `chains` a minimum decomposition is computed.
pub fn lift(poset: &Poset, chains: Option<&ChainDecomposition>) -> Result<ConstructionBundle, ConstructionError> {
    let n = poset.len();
    if n == 0 {
        return Err(ConstructionError::EmptyPoset);
    }
    let computed;
    let chains = match chains {
        Some(c) if c.covers_poset(poset) => c,
        Some(_) => return Err(PosetError::InvalidDecomposition("decomposition does not match the poset".into()).into()),
        None => {
            computed = poset.chain_decomposition();
            &computed
        }
    };
    let mut b = Builder::default();
    for copy in ["G1", "G2"] {
        for name in poset.names() {
            b.add(format!("{copy}.{name}"));
        }
    }
    let (s, v, t) = (b.add("s".into()), b.add("v".into()), b.add("t".into()));
    for &(x, y) in poset.cover_edges() {
        b.edge(x, y);
        b.edge(n + x, n + y);
    }
    let sources: Vec<usize> = (0..n).filter(|&x| poset.predecessors(x).is_empty()).collect();
    let sinks: Vec<usize> = (0..n).filter(|&x| poset.successors(x).is_empty()).collect();
    for &x in &sinks {
        for &y in &sources {
            b.edge(x, n + y);
        }
    }
    for &x in &sources {
        b.edge(s, x);
    }
    for &x in &sinks {
        b.edge(n + x, t);
    }
    b.edge(s, v);
    b.edge(v, t);
    let mut lifted: Vec<Vec<usize>> = chains
        .chains()
        .iter()
        .map(|c| c.iter().copied().chain(c.iter().map(|&x| n + x)).collect())
        .collect();
    lifted.push(vec![s, v, t]);
    b.finish(lifted, None, None, Family::Lifted, vec![("base_width", chains.len())])
}
