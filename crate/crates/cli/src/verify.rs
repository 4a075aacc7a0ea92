//! The reproduction suite behind `verify-paper`.
//!
//! Criteria 1 to 10 are cheap enough for every run. The stretch checks
//! (`--level full`) run exhaustive searches under explicit budgets and report
//! the bounds they reached.

use std::time::{Duration, Instant};

use poset_queues::constructions::{gen_counterexample, gen_general, gen_lazy_lb, gen_mru_lb, lift};
use poset_queues::extensions::{is_lazy, is_mru, lazy_extension, mru_extension, random_extension};
use poset_queues::patterns::{find_bbb, find_bwb_forbidden, find_incoming_forbidden, find_w2};
use poset_queues::rainbow::max_rainbow;
use poset_queues::search::{best_heuristic_layout, lower_bound_check, PrefixConstraint, Strategy};
use poset_queues::testkit::{random_poset, GenSpec, RandomPoset};
use poset_queues::{ChainDecomposition, ConstructionBundle, LinearExtension, Poset, SearchOptions, TieBreak};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::parallel::{queue_number_parallel, Clock};

pub const CRITERIA: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    /// Time limit in milliseconds, if the criterion has one.
    pub limit_ms: Option<u128>,
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(violations: &[String], summary: String) -> Outcome {
    match violations.first() {
        None => Outcome { ok: true, detail: summary },
        Some(first) => Outcome {
            ok: false,
            detail: format!("{} violation(s), first: {first}", violations.len()),
        },
    }
}

/// Runs one criterion, `id` in `1..=CRITERIA`.
pub fn run_criterion(id: usize) -> CriterionReport {
    let (name, limit, run): (&'static str, Option<u64>, fn() -> Outcome) = match id {
        1 => ("general family reaches w^2", Some(1), general_family),
        2 => ("lazy family reaches w^2-w", Some(1), lazy_family),
        3 => ("MRU family reaches (w-1)^2+1", Some(1), mru_family),
        4 => ("lazy extensions stay within w^2-w", Some(60), lazy_corpus),
        5 => ("MRU extensions stay within (w-1)^2+1", Some(60), mru_corpus),
        6 => ("arbitrary extensions stay within w^2", None, arbitrary_corpus),
        7 => ("G(6,2) needs exactly 3 queues", Some(10), small_counterexample),
        8 => ("heuristics need 4 queues on the tilde counterexample", Some(5), tilde_consistency),
        9 => ("lifting adds a nesting edge", None, lifting),
        10 => ("search and rainbow agree with brute force", Some(120), oracle_equivalence),
        _ => panic!("criterion {id} does not exist"),
    };
    let start = Instant::now();
    let out = run();
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs);
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let mut detail = out.detail;
    if !in_time {
        detail.push_str(&format!("; took {elapsed:.2?}, limit {:?}", limit.unwrap_or_default()));
    }
    CriterionReport {
        id,
        name,
        passed: out.ok && in_time,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.map(|l| l.as_millis()),
    }
}

pub fn run_all() -> Vec<CriterionReport> {
    (1..=CRITERIA).map(run_criterion).collect()
}

type Generator = fn(usize) -> Result<ConstructionBundle, poset_queues::ConstructionError>;
type Conformance = fn(&Poset, &ChainDecomposition, &[usize]) -> bool;

fn family_check(ws: &[usize], make: Generator, expected: fn(usize) -> usize, strategy: Option<Conformance>) -> Outcome {
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for &w in ws {
        let b = match make(w) {
            Ok(b) => b,
            Err(e) => {
                bad.push(format!("w={w}: {e}"));
                continue;
            }
        };
        let Some(ext) = b.prescribed_extension.as_ref() else {
            bad.push(format!("w={w}: no prescribed extension"));
            continue;
        };
        let (k, cert) = max_rainbow(ext, b.poset.cover_edges());
        let reference = oracle::rainbow(ext.positions(), b.poset.cover_edges());
        seen.push(k);
        if k != expected(w) || reference != k || !cert.is_valid(ext) {
            bad.push(format!("w={w}: rainbow {k} (reference {reference}), expected {}", expected(w)));
        }
        if let Some(check) = strategy {
            if !check(&b.poset, &b.chains, ext.order()) {
                bad.push(format!("w={w}: prescribed extension does not follow the strategy"));
            }
        }
    }
    outcome(&bad, format!("rainbows {seen:?}"))
}

fn general_family() -> Outcome {
    family_check(&[2, 4, 6], gen_general, |w| w * w, None)
}

fn lazy_family() -> Outcome {
    family_check(
        &[2, 3, 4, 5],
        gen_lazy_lb,
        |w| w * w - w,
        Some(|p, c, o| is_lazy(p, c, o).is_ok_and(|v| v.holds())),
    )
}

fn mru_family() -> Outcome {
    family_check(
        &[2, 3, 4, 5],
        gen_mru_lb,
        |w| (w - 1) * (w - 1) + 1,
        Some(|p, c, o| is_mru(p, c, o).is_ok_and(|v| v.holds())),
    )
}

pub const CORPUS_SIZE: u64 = 1000;
const DENSITIES: [f64; 5] = [0.02, 0.05, 0.1, 0.2, 0.4];

/// Corpus member `idx`: width target `2 + idx % 4`, size up to 40.
pub fn corpus_poset(idx: u64) -> RandomPoset {
    let w = 2 + (idx % 4) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(idx);
    let spec = GenSpec {
        width_target: w,
        n: rng.gen_range(w..=40),
        inter_chain_density: DENSITIES[(idx / 4) as usize % DENSITIES.len()],
        seed: idx,
    };
    random_poset(&spec).expect("corpus specs are valid")
}

/// Calls `f` with the generating and a minimum chain decomposition of every
/// corpus poset.
fn over_corpus(mut f: impl FnMut(u64, &Poset, &ChainDecomposition, &str)) {
    for idx in 0..CORPUS_SIZE {
        let rp = corpus_poset(idx);
        f(idx, &rp.poset, &rp.chains, "generating");
        let minimal = rp.poset.chain_decomposition();
        f(idx, &rp.poset, &minimal, "minimum");
    }
}

fn lazy_corpus() -> Outcome {
    let mut bad = Vec::new();
    let mut runs = 0;
    over_corpus(|idx, p, c, label| {
        let w = c.len();
        for tb in [TieBreak::MinIndex, TieBreak::SeededRandom(idx)] {
            let (ext, _) = lazy_extension(p, c, &tb).expect("valid decomposition");
            runs += 1;
            let k = max_rainbow(&ext, p.cover_edges()).0;
            // a single chain still needs one queue
            if k > (w * w - w).max(1) {
                bad.push(format!("poset {idx} ({label}): rainbow {k} with {w} chains"));
            }
            if let Some(wit) = find_incoming_forbidden(p, c, &ext) {
                bad.push(format!("poset {idx} ({label}): {:?} pattern", wit.pattern_id()));
            }
        }
    });
    outcome(&bad, format!("{runs} lazy extensions checked"))
}

fn mru_corpus() -> Outcome {
    let mut bad = Vec::new();
    let mut runs = 0;
    over_corpus(|idx, p, c, label| {
        let w = c.len();
        for tb in [TieBreak::MinIndex, TieBreak::SeededRandom(idx)] {
            let (ext, _) = mru_extension(p, c, &tb).expect("valid decomposition");
            runs += 1;
            let k = max_rainbow(&ext, p.cover_edges()).0;
            if k > (w - 1) * (w - 1) + 1 {
                bad.push(format!("poset {idx} ({label}): rainbow {k} with {w} chains"));
            }
            if let Some(wit) = find_bwb_forbidden(p, c, &ext) {
                bad.push(format!("poset {idx} ({label}): {:?} pattern", wit.pattern_id()));
            }
        }
    });
    outcome(&bad, format!("{runs} MRU extensions checked"))
}

fn arbitrary_corpus() -> Outcome {
    let mut bad = Vec::new();
    let mut runs = 0;
    for idx in 0..CORPUS_SIZE {
        let rp = corpus_poset(idx);
        let p = &rp.poset;
        let minimal = p.chain_decomposition();
        for j in 0..10 {
            let ext = random_extension(p, idx * 10 + j);
            runs += 1;
            for (c, label) in [(&rp.chains, "generating"), (&minimal, "minimum")] {
                let w = c.len();
                let k = max_rainbow(&ext, p.cover_edges()).0;
                if k > w * w {
                    bad.push(format!("poset {idx} ({label}), extension {j}: rainbow {k}"));
                }
                if find_bbb(p, c, &ext).is_some() || find_w2(p, c, &ext).is_some() {
                    bad.push(format!("poset {idx} ({label}), extension {j}: forbidden pattern"));
                }
            }
        }
    }
    outcome(&bad, format!("{runs} random extensions checked"))
}

fn small_counterexample() -> Outcome {
    let (p, q) = (6, 2);
    let b = gen_counterexample(p, q, false).expect("valid parameters");
    let bound = oracle::multinomial(&[p, p, q]);
    let count = oracle::count_extensions(&b.poset);
    let clock = Clock::new(false);
    let opts = SearchOptions {
        control: Some(&clock),
        ..SearchOptions::default()
    };
    let r = queue_number_parallel(&b.poset, &opts, 1).expect("no constraints");
    let cert_ok = r
        .certificate
        .as_ref()
        .is_some_and(|c| c.is_valid() && c.queue_count == 3 && oracle::is_extension(&b.poset, c.extension.order()));
    let mut bad = Vec::new();
    if r.upper_bound != 3 || !r.proven {
        bad.push(format!("search gave [{}, {}], proven {}", r.lower_bound, r.upper_bound, r.proven));
    }
    if !cert_ok {
        bad.push("certificate is not a valid 3-queue layout".into());
    }
    if count > bound || r.explored > bound {
        bad.push(format!("{count} extensions, {} nodes explored, bound {bound}", r.explored));
    }
    outcome(
        &bad,
        format!("queue number 3 proven, {} nodes explored, {count} extensions, bound {bound}", r.explored),
    )
}

fn tilde_consistency() -> Outcome {
    let b = gen_counterexample(31, 22, true).expect("valid parameters");
    let p = &b.poset;
    let chains = p.chain_decomposition();
    let mut bad = Vec::new();
    let (mru, _) = mru_extension(p, &chains, &TieBreak::MinIndex).expect("valid decomposition");
    let k = max_rainbow(&mru, p.cover_edges()).0;
    if k < 4 {
        bad.push(format!("MRU extension has rainbow {k}"));
    }
    let mut strategies = vec![Strategy::Lazy, Strategy::Mru];
    strategies.extend((0..20).map(Strategy::Random));
    let mut best = usize::MAX;
    for s in &strategies {
        let q = best_heuristic_layout(p, &[*s]).expect("one strategy").queue_count;
        best = best.min(q);
        if q <= 3 {
            bad.push(format!("{s:?} found a layout with {q} queues"));
        }
    }
    outcome(&bad, format!("MRU rainbow {k}, best heuristic layout {best} queues"))
}

fn lifting() -> Outcome {
    let bases = [
        ("lazy family w=2", gen_lazy_lb(2).expect("valid").poset),
        ("G(6,2)", gen_counterexample(6, 2, false).expect("valid").poset),
    ];
    let mut bad = Vec::new();
    let mut after_g1 = 0;
    for (label, base) in &bases {
        let n = base.len();
        let lifted = lift(base, None).expect("non-empty");
        let p = &lifted.poset;
        if p.width() != base.width() + 1 || oracle::width(p) != base.width() + 1 {
            bad.push(format!("{label}: width {} after lifting {}", p.width(), base.width()));
        }
        let v = p.index_of("v").expect("lift adds v");
        let restricted = |ext: &LinearExtension, lo: usize| {
            let es: Vec<_> = p
                .cover_edges()
                .iter()
                .copied()
                .filter(|&(x, y)| (lo..lo + n).contains(&x) && (lo..lo + n).contains(&y))
                .collect();
            max_rainbow(ext, &es).0
        };
        for seed in 0..100 {
            let ext = random_extension(p, seed);
            let last_g1 = (0..n).map(|x| ext.position(x)).max().unwrap_or(0);
            let first_g2 = (n..2 * n).map(|x| ext.position(x)).min().unwrap_or(0);
            if last_g1 > first_g2 {
                bad.push(format!("{label}, extension {seed}: copies interleave"));
            }
            let total = max_rainbow(&ext, p.cover_edges()).0;
            if ext.position(v) > last_g1 {
                after_g1 += 1;
                if total < 1 + restricted(&ext, 0) {
                    bad.push(format!("{label}, extension {seed}: v after G1 without extra nesting"));
                }
            }
            if ext.position(v) < first_g2 && total < 1 + restricted(&ext, n) {
                bad.push(format!("{label}, extension {seed}: v before G2 without extra nesting"));
            }
        }
    }
    outcome(&bad, format!("200 lifted extensions, {after_g1} with v after G1"))
}

fn oracle_equivalence() -> Outcome {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let w = rng.gen_range(1..=4);
        let spec = GenSpec {
            width_target: w,
            n: rng.gen_range(w..=9),
            inter_chain_density: rng.gen_range(0.0..0.6),
            seed: rng.gen(),
        };
        let p = random_poset(&spec).expect("valid spec").poset;
        let r = queue_number_parallel(&p, &SearchOptions::default(), 1).expect("no constraints");
        let naive = oracle::queue_number(&p);
        if !r.proven || r.upper_bound != naive {
            bad.push(format!("instance {i}: search {} (proven {}), enumeration {naive}", r.upper_bound, r.proven));
        }
    }
    let mut instances = 0;
    while instances < 500 {
        let w = rng.gen_range(1..=5);
        let spec = GenSpec {
            width_target: w,
            n: rng.gen_range(w..=16),
            inter_chain_density: rng.gen_range(0.0..0.6),
            seed: rng.gen(),
        };
        let p = random_poset(&spec).expect("valid spec").poset;
        let ext = random_extension(&p, rng.gen());
        let edges: Vec<_> = p.cover_edges().iter().copied().take(12).collect();
        let (k, cert) = max_rainbow(&ext, &edges);
        let reference = oracle::subset_rainbow(ext.positions(), &edges);
        if k != reference || cert.len() != k || !cert.is_valid(&ext) {
            bad.push(format!("rainbow instance {instances}: {k} vs subset oracle {reference}"));
        }
        instances += 1;
    }
    outcome(&bad, "200 exact searches and 500 rainbows agree".into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StretchStatus {
    /// Every admissible extension needs at least the claimed number of queues.
    Verified,
    /// A layout with fewer queues exists; the claim is false.
    Refuted,
    /// The budget ran out first.
    Exhausted,
}

#[derive(Debug, Clone, Serialize)]
pub struct StretchReport {
    pub name: &'static str,
    pub claimed: usize,
    pub status: StretchStatus,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub explored: u64,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Copy)]
pub struct StretchBudget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
    pub jobs: usize,
    pub verbose: bool,
}

/// The exhaustive checks: `G(14,6)` under `c14 ≺ b1` and `G̃(31,22)`, each
/// against 4 queues.
pub fn run_stretch(budget: &StretchBudget) -> Vec<StretchReport> {
    let constrained = gen_counterexample(14, 6, false).expect("valid parameters").poset;
    let c14 = constrained.index_of("c14").expect("generated name");
    let b1 = constrained.index_of("b1").expect("generated name");
    let constraint = PrefixConstraint { pairs: vec![(c14, b1)] };
    let tilde = gen_counterexample(31, 22, true).expect("valid parameters").poset;
    [
        ("G(14,6) with c14 before b1", &constrained, Some(&constraint)),
        ("tilde G(31,22)", &tilde, None),
    ]
    .into_iter()
    .map(|(name, poset, constraints)| {
        let clock = Clock::new(budget.verbose);
        let opts = SearchOptions {
            time_budget: budget.time,
            node_budget: budget.nodes,
            initial_upper: Some(4),
            stop_at_first: true,
            constraints,
            control: Some(&clock),
            ..SearchOptions::default()
        };
        let result = queue_number_parallel(poset, &opts, budget.jobs).expect("constraint is consistent");
        let check = lower_bound_check(4, result);
        let status = if check.verified {
            StretchStatus::Verified
        } else if check.countermodel.is_some() {
            StretchStatus::Refuted
        } else {
            StretchStatus::Exhausted
        };
        StretchReport {
            name,
            claimed: 4,
            status,
            lower_bound: check.result.lower_bound,
            upper_bound: check.result.upper_bound,
            explored: check.result.explored,
            elapsed_ms: clock.elapsed_ms(),
        }
    })
    .collect()
}

/// Brute-force references, deliberately independent of the library
/// algorithms.
#[allow(clippy::needless_range_loop)]
pub mod oracle {
    use std::collections::HashMap;

    use poset_queues::Poset;

    fn less_matrix(p: &Poset) -> Vec<Vec<bool>> {
        let n = p.len();
        let mut less = vec![vec![false; n]; n];
        for &(u, v) in p.cover_edges() {
            less[u][v] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        less
    }

    pub fn is_extension(p: &Poset, order: &[usize]) -> bool {
        let n = p.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        order.len() == n && p.cover_edges().iter().all(|&(u, v)| pos[u] < pos[v])
    }

    fn nest(pos: &[usize], e: (usize, usize), f: (usize, usize)) -> bool {
        pos[e.0] < pos[f.0] && pos[f.0] < pos[f.1] && pos[f.1] < pos[e.1]
    }

    /// Longest chain of the nesting relation, quadratic.
    pub fn rainbow(pos: &[usize], edges: &[(usize, usize)]) -> usize {
        let mut idx: Vec<usize> = (0..edges.len()).collect();
        idx.sort_by_key(|&i| pos[edges[i].1] - pos[edges[i].0]);
        let mut best = vec![1; idx.len()];
        for a in 0..idx.len() {
            for b in 0..a {
                if nest(pos, edges[idx[a]], edges[idx[b]]) {
                    best[a] = best[a].max(best[b] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Largest pairwise-nested edge subset by enumerating all subsets.
    pub fn subset_rainbow(pos: &[usize], edges: &[(usize, usize)]) -> usize {
        let m = edges.len();
        assert!(m <= 20, "subset oracle is exponential");
        (0u32..1 << m)
            .filter(|mask| {
                let idx: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                idx.iter().enumerate().all(|(a, &i)| {
                    idx[a + 1..]
                        .iter()
                        .all(|&j| nest(pos, edges[i], edges[j]) || nest(pos, edges[j], edges[i]))
                })
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Minimum rainbow over every linear extension, by enumeration.
    pub fn queue_number(p: &Poset) -> usize {
        fn go(
            less: &[Vec<bool>],
            edges: &[(usize, usize)],
            order: &mut Vec<usize>,
            used: &mut [bool],
            best: &mut usize,
        ) {
            let n = used.len();
            if order.len() == n {
                let mut pos = vec![0; n];
                for (i, &v) in order.iter().enumerate() {
                    pos[v] = i;
                }
                *best = (*best).min(rainbow(&pos, edges));
                return;
            }
            for v in 0..n {
                if !used[v] && (0..n).all(|u| !less[u][v] || used[u]) {
                    used[v] = true;
                    order.push(v);
                    go(less, edges, order, used, best);
                    order.pop();
                    used[v] = false;
                }
            }
        }
        let less = less_matrix(p);
        let mut best = usize::MAX;
        go(&less, p.cover_edges(), &mut Vec::new(), &mut vec![false; p.len()], &mut best);
        best
    }

    /// Number of linear extensions, by dynamic programming over down-sets.
    pub fn count_extensions(p: &Poset) -> u64 {
        let n = p.len();
        assert!(n <= 64);
        let less = less_matrix(p);
        let below: Vec<u64> = (0..n)
            .map(|v| (0..n).filter(|&u| less[u][v]).fold(0, |m, u| m | 1 << u))
            .collect();
        let mut layer: HashMap<u64, u64> = HashMap::from([(0, 1)]);
        for _ in 0..n {
            let mut next = HashMap::new();
            for (&set, &ways) in &layer {
                for v in 0..n {
                    if set >> v & 1 == 0 && below[v] & !set == 0 {
                        *next.entry(set | 1 << v).or_insert(0) += ways;
                    }
                }
            }
            layer = next;
        }
        layer.values().sum()
    }

    /// `(Σ k)! / Π k!`, the number of interleavings of chains of these lengths.
    pub fn multinomial(parts: &[usize]) -> u64 {
        let mut total = 0u64;
        let mut acc = 1u64;
        for &k in parts {
            for i in 1..=k as u64 {
                total += 1;
                acc = acc * total / i;
            }
        }
        acc
    }

    /// Largest antichain, by branching on the lowest remaining element.
    pub fn width(p: &Poset) -> usize {
        fn go(cand: u64, comparable: &[u64]) -> usize {
            if cand == 0 {
                return 0;
            }
            let v = cand.trailing_zeros() as usize;
            let rest = cand & !(1 << v);
            let with = 1 + go(rest & !comparable[v], comparable);
            if rest & comparable[v] == 0 {
                return with;
            }
            with.max(go(rest, comparable))
        }
        let n = p.len();
        assert!(n <= 64);
        let less = less_matrix(p);
        let comparable: Vec<u64> = (0..n)
            .map(|u| (0..n).filter(|&v| less[u][v] || less[v][u]).fold(0, |m, v| m | 1 << v))
            .collect();
        go(if n == 64 { u64::MAX } else { (1u64 << n) - 1 }, &comparable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multinomial_matches_factorials() {
        let f = |k: u64| (1..=k).product::<u64>();
        assert_eq!(oracle::multinomial(&[6, 6, 2]), f(14) / (f(6) * f(6) * f(2)));
        assert_eq!(oracle::multinomial(&[6, 6, 2]), 84084);
        assert_eq!(oracle::multinomial(&[]), 1);
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = corpus_poset(17);
        let b = corpus_poset(17);
        assert_eq!(a.poset.cover_edges(), b.poset.cover_edges());
        assert!(a.width <= 3);
    }

    #[test]
    fn count_of_a_chain_and_an_antichain() {
        let chain = Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(oracle::count_extensions(&chain), 1);
        let anti = Poset::build::<&str>(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(oracle::count_extensions(&anti), 6);
        assert_eq!(oracle::width(&chain), 1);
        assert_eq!(oracle::width(&anti), 3);
    }
}
