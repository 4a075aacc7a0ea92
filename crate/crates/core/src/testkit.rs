//! Seeded random posets with a known chain decomposition.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::poset::{ChainDecomposition, Poset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid generator spec: {0}")]
pub struct InvalidSpec(pub String);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub width_target: usize,
    pub n: usize,
    pub inter_chain_density: f64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct RandomPoset {
    pub poset: Poset,
    /// The `width_target` chains the poset was generated from.
    pub chains: ChainDecomposition,
    /// Actual width, at most `width_target`.
    pub width: usize,
}

/// Draws `width_target` chains of random positive sizes summing to `n`,
/// interleaves them by a random global rank and adds each cross-chain pair
/// `u, v` with `rank(u) < rank(v)` independently with the given density.
///
/// Elements are named `c{chain}_{k}` and indexed chain by chain.
pub fn random_poset(spec: &GenSpec) -> Result<RandomPoset, InvalidSpec> {
    let GenSpec {
        width_target: w,
        n,
        inter_chain_density: density,
        seed,
    } = *spec;
    if w == 0 || n < w {
        return Err(InvalidSpec(format!("need 1 <= width_target <= n, got w={w}, n={n}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(InvalidSpec(format!("density {density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut cuts = index::sample(&mut rng, n - 1, w - 1).into_vec();
    cuts.sort_unstable();
    let mut sizes = Vec::with_capacity(w);
    let mut prev = 0;
    for c in cuts.into_iter().map(|c| c + 1).chain([n]) {
        sizes.push(c - prev);
        prev = c;
    }

    let mut chains = Vec::with_capacity(w);
    let mut names = Vec::with_capacity(n);
    for (ci, &size) in sizes.iter().enumerate() {
        let start = names.len();
        names.extend((1..=size).map(|k| format!("c{}_{k}", ci + 1)));
        chains.push((start..start + size).collect::<Vec<_>>());
    }

    // shuffled chain labels: the k-th occurrence of label c is element k of chain c
    let mut labels: Vec<usize> = sizes.iter().enumerate().flat_map(|(c, &s)| core::iter::repeat_n(c, s)).collect();
    labels.shuffle(&mut rng);
    let mut rank = vec![0; n];
    let mut next = vec![0; w];
    for (r, &c) in labels.iter().enumerate() {
        rank[chains[c][next[c]]] = r;
        next[c] += 1;
    }

    let mut by_rank: Vec<usize> = (0..n).collect();
    by_rank.sort_unstable_by_key(|&v| rank[v]);
    let mut chain_of = vec![0; n];
    for (c, chain) in chains.iter().enumerate() {
        for &v in chain {
            chain_of[v] = c;
        }
    }
    let mut edges = Vec::new();
    for chain in &chains {
        edges.extend(chain.windows(2).map(|p| (p[0], p[1])));
    }
    for (i, &u) in by_rank.iter().enumerate() {
        for &v in &by_rank[i + 1..] {
            if chain_of[u] != chain_of[v] && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }

    let poset = Poset::from_indexed(names, &edges).expect("edges follow the rank order");
    let chains = ChainDecomposition::new(&poset, chains).expect("chains are paths");
    let width = poset.width();
    assert!(width <= w);
    Ok(RandomPoset { poset, chains, width })
}
