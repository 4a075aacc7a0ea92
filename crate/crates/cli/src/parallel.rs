//! Wall clock and multi-threaded driver for the exact search.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use poset_queues::search::{Progress, SearchControl, SearchError, Searcher};
use poset_queues::{Poset, SearchOptions, SearchResult};

/// [`SearchControl`] backed by [`Instant`], optionally reporting progress on
/// stderr at most once per second.
pub struct Clock {
    start: Instant,
    verbose: bool,
    last_report_ms: AtomicU64,
}

impl Clock {
    pub fn new(verbose: bool) -> Self {
        Clock {
            start: Instant::now(),
            verbose,
            last_report_ms: AtomicU64::new(0),
        }
    }

    pub fn elapsed_ms(&self) -> u128 {
        self.start.elapsed().as_millis()
    }
}

impl SearchControl for Clock {
    fn elapsed(&self) -> Option<Duration> {
        Some(self.start.elapsed())
    }

    fn progress(&self, p: Progress) {
        if !self.verbose {
            return;
        }
        let now = self.start.elapsed().as_millis() as u64;
        let last = self.last_report_ms.load(Ordering::Relaxed);
        if now >= last + 1000
            && self
                .last_report_ms
                .compare_exchange(last, now, Ordering::Relaxed, Ordering::Relaxed)
                .is_ok()
        {
            eprintln!(
                "[{:>7.1}s] explored {} nodes, bounds [{}, {}]",
                now as f64 / 1000.0,
                p.explored,
                p.lower_bound,
                p.upper_bound
            );
        }
    }
}

/// Exact search on `jobs` threads. The frontier is split into roughly
/// `8 * jobs` prefixes that workers claim one at a time; the proven value does
/// not depend on `jobs`.
pub fn queue_number_parallel(
    poset: &Poset,
    options: &SearchOptions<'_>,
    jobs: usize,
) -> Result<SearchResult, SearchError> {
    if jobs <= 1 {
        return poset_queues::search::queue_number_exact(poset, options);
    }
    let searcher = Searcher::new(poset, options)?;
    let shared = searcher.shared();
    let frontier = searcher.frontier(jobs * 8);
    let next = AtomicUsize::new(0);
    let complete = Mutex::new(true);
    let bests = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|_| {
                scope.spawn(|| {
                    let mut worker = searcher.worker();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(prefix) = frontier.get(i) else { break };
                        if !worker.explore(prefix, &shared) {
                            *complete.lock().expect("no worker panics while holding the lock") = false;
                            break;
                        }
                    }
                    worker.into_best()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect::<Vec<_>>()
    });
    let complete = complete.into_inner().expect("lock is not poisoned");
    Ok(searcher.finish(&shared, complete, bests))
}

#[cfg(test)]
mod tests {
    use super::*;
    use poset_queues::constructions::gen_counterexample;

    #[test]
    fn matches_sequential() {
        let p = gen_counterexample(6, 2, false).unwrap().poset;
        let opts = SearchOptions::default();
        let seq = queue_number_parallel(&p, &opts, 1).unwrap();
        let par = queue_number_parallel(&p, &opts, 4).unwrap();
        assert!(seq.proven && par.proven);
        assert_eq!(seq.upper_bound, 3);
        assert_eq!(par.upper_bound, 3);
        assert!(par.certificate.unwrap().is_valid());
    }

    #[test]
    fn clock_reports_time() {
        let c = Clock::new(false);
        assert!(c.elapsed().is_some());
        assert!(!c.cancelled());
    }
}
