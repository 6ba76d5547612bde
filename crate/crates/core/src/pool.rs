use std::num::NonZeroUsize;
use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::{ThreadPool, ThreadPoolBuilder};

pub use rayon::ThreadPoolBuildError;

/// Fixed set of workers running fork-join phases.
///
/// A phase hands out contiguous chunks of an index range in ascending order
/// from a shared cursor; it returns only after every worker has finished, so
/// the return is the phase barrier. With one worker the phase runs inline on
/// the calling thread.
pub struct WorkerPool {
    workers: usize,
    pool: Option<ThreadPool>,
}

impl WorkerPool {
    pub fn new(workers: usize) -> Result<Self, ThreadPoolBuildError> {
        let workers = workers.max(1);
        let pool = if workers == 1 {
            None
        } else {
            Some(
                ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .thread_name(|i| format!("cc-worker-{i}"))
                    .build()?,
            )
        };
        Ok(WorkerPool { workers, pool })
    }

    pub fn single() -> Self {
        WorkerPool {
            workers: 1,
            pool: None,
        }
    }

    /// One worker per hardware thread.
    pub fn max() -> Result<Self, ThreadPoolBuildError> {
        Self::new(hardware_concurrency())
    }

    #[inline]
    pub fn workers(&self) -> usize {
        self.workers
    }

    fn grain(&self, len: usize) -> usize {
        (len / (self.workers * 16)).clamp(32, 4096)
    }

    /// Runs `body` over `0..len` in ascending chunks. Each worker owns one
    /// state built by `init`; the states are returned when the phase ends.
    pub fn run_phase<S, I, F>(&self, len: usize, init: I, body: F) -> Vec<S>
    where
        S: Send,
        I: Fn() -> S + Sync,
        F: Fn(&mut S, Range<usize>) + Sync,
    {
        let Some(pool) = &self.pool else {
            let mut state = init();
            if len > 0 {
                body(&mut state, 0..len);
            }
            return vec![state];
        };
        let grain = self.grain(len);
        let cursor = AtomicUsize::new(0);
        pool.broadcast(|_| {
            let mut state = init();
            loop {
                let start = cursor.fetch_add(grain, Ordering::Relaxed);
                if start >= len {
                    break;
                }
                body(&mut state, start..(start + grain).min(len));
            }
            state
        })
    }
}

pub fn hardware_concurrency() -> usize {
    std::thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_covers_range_exactly_once() {
        for workers in [1, 3, 4] {
            let pool = WorkerPool::new(workers).unwrap();
            for len in [0, 1, 31, 32, 1000, 100_000] {
                let hits: Vec<AtomicUsize> = (0..len).map(|_| AtomicUsize::new(0)).collect();
                let states = pool.run_phase(
                    len,
                    || 0usize,
                    |count, range| {
                        *count += range.len();
                        for i in range {
                            hits[i].fetch_add(1, Ordering::Relaxed);
                        }
                    },
                );
                assert_eq!(states.len(), workers);
                assert_eq!(states.iter().sum::<usize>(), len);
                assert!(hits.iter().all(|h| h.load(Ordering::Relaxed) == 1));
            }
        }
    }

    #[test]
    fn zero_workers_means_one() {
        assert_eq!(WorkerPool::new(0).unwrap().workers(), 1);
    }
}
