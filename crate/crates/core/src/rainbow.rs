//! Nesting, maximum rainbows and queue assignment for a fixed vertex order.
//!
//! Edge `(x1, y1)` nests `(x2, y2)` when `x1 ≺ x2 ≺ y2 ≺ y1`. Edges sharing an
//! endpoint never nest. A rainbow is a set of pairwise nested edges; its
//! maximum size equals the minimum number of queues for that order.

use alloc::vec;
use alloc::vec::Vec;

use crate::poset::LinearExtension;
pub use crate::poset::Edge;

/// Pairwise nested edges, outermost first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RainbowCertificate {
    pub edges: Vec<Edge>,
}

impl RainbowCertificate {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Every consecutive pair nests under `ext`.
    pub fn is_valid(&self, ext: &LinearExtension) -> bool {
        self.edges.windows(2).all(|w| nests(w[0], w[1], ext))
    }
}

/// `e1` strictly nests `e2` under `ext`.
#[inline]
pub fn nests(e1: Edge, e2: Edge, ext: &LinearExtension) -> bool {
    let (a, b) = (ext.position(e1.0), ext.position(e1.1));
    let (c, d) = (ext.position(e2.0), ext.position(e2.1));
    a < c && c < d && d < b
}

/// Nesting depth of every edge: the size of the largest rainbow in which it
/// is the innermost edge. Also returns, per edge, the next-outer edge of one
/// such rainbow.
fn depths(ext: &LinearExtension, edges: &[Edge]) -> (Vec<usize>, Vec<Option<usize>>) {
    let m = edges.len();
    let spans: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| (ext.position(u), ext.position(v)))
        .collect();
    // Left endpoints ascending; equal left endpoints by right ascending so a
    // strictly decreasing run of right endpoints never uses two edges that
    // share their left endpoint.
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_unstable_by_key(|&i| (spans[i].0, spans[i].1));

    // tails[k] = edge ending a depth-(k+1) rainbow whose innermost right endpoint is largest
    let mut tails: Vec<usize> = Vec::new();
    let mut depth = vec![0; m];
    let mut parent = vec![None; m];
    for &i in &idx {
        let r = spans[i].1;
        // first k with right(tails[k]) <= r, i.e. cannot be nested outside i
        let k = tails.partition_point(|&t| spans[t].1 > r);
        parent[i] = k.checked_sub(1).map(|p| tails[p]);
        depth[i] = k + 1;
        if k == tails.len() {
            tails.push(i);
        } else {
            tails[k] = i;
        }
    }
    (depth, parent)
}

/// Size of a maximum rainbow of `edges` under `ext`, with a witness.
///
/// `O(m log m)`: sort by left endpoint and take a longest strictly decreasing
/// subsequence of right endpoints.
pub fn max_rainbow(ext: &LinearExtension, edges: &[Edge]) -> (usize, RainbowCertificate) {
    let (depth, parent) = depths(ext, edges);
    let Some(inner) = (0..edges.len()).max_by_key(|&i| (depth[i], core::cmp::Reverse(i))) else {
        return (0, RainbowCertificate::default());
    };
    let mut chain = vec![edges[inner]];
    let mut cur = inner;
    while let Some(p) = parent[cur] {
        chain.push(edges[p]);
        cur = p;
    }
    chain.reverse();
    (depth[inner], RainbowCertificate { edges: chain })
}

/// A queue layout: a linear extension plus a queue index (1-based) per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueueLayout {
    pub extension: LinearExtension,
    pub edges: Vec<Edge>,
    /// Parallel to `edges`, values in `1..=queue_count`.
    pub queue_of: Vec<usize>,
    pub queue_count: usize,
}

impl QueueLayout {
    /// No two edges in one queue nest.
    pub fn is_valid(&self) -> bool {
        let m = self.edges.len();
        (0..m).all(|i| {
            (0..m).all(|j| {
                self.queue_of[i] != self.queue_of[j] || !nests(self.edges[i], self.edges[j], &self.extension)
            })
        })
    }
}

/// Assigns each edge to the queue given by its nesting depth.
///
/// If `e` nests `f` then `depth(f) > depth(e)`, so a queue never holds two
/// nested edges, and the number of queues equals the maximum rainbow size.
pub fn queue_assignment(ext: &LinearExtension, edges: &[Edge]) -> QueueLayout {
    let (depth, _) = depths(ext, edges);
    let queue_count = depth.iter().copied().max().unwrap_or(0);
    QueueLayout {
        extension: ext.clone(),
        edges: edges.to_vec(),
        queue_of: depth,
        queue_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(n: usize) -> LinearExtension {
        LinearExtension::from_order_unchecked((0..n).collect())
    }

    #[test]
    fn nesting_cases() {
        let e = ext(4);
        assert!(nests((0, 3), (1, 2), &e));
        assert!(!nests((1, 2), (0, 3), &e));
        assert!(!nests((0, 2), (1, 3), &e));
        assert!(!nests((0, 2), (0, 1), &e));
        assert!(!nests((0, 3), (1, 3), &e));
    }

    #[test]
    fn small_rainbows() {
        let e = ext(4);
        assert_eq!(max_rainbow(&e, &[]).0, 0);
        assert_eq!(max_rainbow(&e, &[(0, 1), (1, 2)]).0, 1);
        let (k, cert) = max_rainbow(&e, &[(1, 2), (0, 3)]);
        assert_eq!(k, 2);
        assert_eq!(cert.edges, vec![(0, 3), (1, 2)]);
        assert!(cert.is_valid(&e));
        // shared left endpoint: (0,3) and (0,2) do not nest
        assert_eq!(max_rainbow(&e, &[(0, 3), (0, 2)]).0, 1);
        assert_eq!(max_rainbow(&e, &[(0, 3), (0, 2), (1, 2)]).0, 2);
    }

    #[test]
    fn queue_examples() {
        let e = ext(4);
        let q = queue_assignment(&e, &[(0, 1), (2, 3)]);
        assert_eq!((q.queue_of.clone(), q.queue_count), (vec![1, 1], 1));
        let q = queue_assignment(&e, &[(0, 3), (1, 2)]);
        assert_eq!((q.queue_of.clone(), q.queue_count), (vec![1, 2], 2));
        assert!(q.is_valid());
    }
}
