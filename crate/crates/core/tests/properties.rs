use poset_queues::constructions::{gen_counterexample, gen_lazy_lb, lift};
use poset_queues::extensions::{is_lazy, is_mru, lazy_extension, mru_extension, random_extension};
use poset_queues::poset::is_linear_extension;
use poset_queues::rainbow::{max_rainbow, queue_assignment};
use poset_queues::testkit::{random_poset, GenSpec};
use poset_queues::{Poset, TieBreak};
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = GenSpec> {
    (1usize..=5, 0usize..30, 0.0f64..0.6, any::<u64>()).prop_map(|(w, extra, d, seed)| GenSpec {
        width_target: w,
        n: w + extra,
        inter_chain_density: d,
        seed,
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    // the lazy bound w²-w is stated for w >= 2; one chain still needs a queue
    #[test]
    fn strategies_produce_conforming_extensions(s in spec(), tb_seed in any::<u64>()) {
        let rp = random_poset(&s).unwrap();
        let (p, c) = (&rp.poset, &rp.chains);
        prop_assert!(rp.width <= s.width_target);
        let w = c.len();
        for tb in [TieBreak::MinIndex, TieBreak::SeededRandom(tb_seed)] {
            let (l, trace) = lazy_extension(p, c, &tb).unwrap();
            prop_assert!(is_linear_extension(p, l.order()).unwrap());
            prop_assert!(is_lazy(p, c, l.order()).unwrap().holds());
            prop_assert_eq!(trace.steps.len(), p.len());
            prop_assert!(max_rainbow(&l, p.cover_edges()).0 <= (w * w - w).max(1));
            let (m, _) = mru_extension(p, c, &tb).unwrap();
            prop_assert!(is_mru(p, c, m.order()).unwrap().holds());
            prop_assert!(max_rainbow(&m, p.cover_edges()).0 <= (w.max(1) - 1).pow(2) + 1);
            // replaying an extension through the preference tie-break is stable
            let (again, _) = mru_extension(p, c, &TieBreak::Preference(m.order().to_vec())).unwrap();
            prop_assert_eq!(again.order(), m.order());
        }
    }

    #[test]
    fn queue_assignment_is_an_optimal_layout(s in spec(), seed in any::<u64>()) {
        let rp = random_poset(&s).unwrap();
        let ext = random_extension(&rp.poset, seed);
        let (k, cert) = max_rainbow(&ext, rp.poset.cover_edges());
        let q = queue_assignment(&ext, rp.poset.cover_edges());
        prop_assert!(q.is_valid());
        prop_assert_eq!(q.queue_count, k);
        prop_assert!(cert.is_valid(&ext));
        prop_assert!(k <= rp.chains.len().pow(2));
    }

    #[test]
    fn lifted_extensions_separate_the_copies(seed in any::<u64>(), which in 0usize..2) {
        let base: Poset = if which == 0 {
            gen_lazy_lb(2).unwrap().poset
        } else {
            gen_counterexample(6, 2, false).unwrap().poset
        };
        let n = base.len();
        let lifted = lift(&base, None).unwrap();
        let p = &lifted.poset;
        prop_assert_eq!(p.width(), base.width() + 1);
        let ext = random_extension(p, seed);
        let last_g1 = (0..n).map(|x| ext.position(x)).max().unwrap();
        let first_g2 = (n..2 * n).map(|x| ext.position(x)).min().unwrap();
        prop_assert!(last_g1 < first_g2);
        let total = max_rainbow(&ext, p.cover_edges()).0;
        let v = p.index_of("v").unwrap();
        let part = |lo: usize, hi: usize| {
            let es: Vec<_> = p.cover_edges().iter().copied().filter(|&(x, y)| lo <= x && x < hi && lo <= y && y < hi).collect();
            max_rainbow(&ext, &es).0
        };
        if ext.position(v) > last_g1 {
            prop_assert!(total > part(0, n));
        }
        if ext.position(v) < first_g2 {
            prop_assert!(total > part(n, 2 * n));
        }
    }
}
