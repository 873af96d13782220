//! Parallel SAW counting on a rayon pool.

use rayon::prelude::*;
use rayon::ThreadPool;
use sawcantor_core::saw::{count_saws_with, Budget, SawCountTable, SawCounter};
use sawcantor_core::{CayleyGraph, Error, Result};

/// Runs the prefix subtrees of each enumeration on a dedicated pool.
///
/// Task results are collected in task order and summed exactly, so the
/// table does not depend on the number of workers.
pub struct Parallel {
    pool: ThreadPool,
    budget: Budget,
}

impl Parallel {
    pub fn new(workers: usize, budget: Budget) -> anyhow::Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .thread_name(|i| format!("saw-{i}"))
            .build()?;
        Ok(Parallel { pool, budget })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }
}

impl SawCounter for Parallel {
    fn count(&self, g: &CayleyGraph, n_max: usize) -> Result<SawCountTable> {
        count_saws_with(g, n_max, &self.budget, |engine, tasks| {
            let parts: Vec<Vec<u64>> = self.pool.install(|| {
                tasks
                    .par_iter()
                    .map(|t| engine.run(t))
                    .collect::<Result<_>>()
            })?;
            let mut total = vec![0u64; engine.n_max() + 1];
            for part in parts {
                for (acc, c) in total.iter_mut().zip(part) {
                    *acc = acc.checked_add(c).ok_or_else(|| {
                        Error::InvariantViolation("per-length count overflowed 64 bits".into())
                    })?;
                }
            }
            Ok(total)
        })
    }
}

/// Default worker count: every available core.
pub fn max_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[cfg(test)]
mod tests {
    use super::*;
    use sawcantor_core::saw::count_saws;

    #[test]
    fn matches_sequential_for_any_pool_size() {
        for term in ["Z^2", "H3 x Z", "Z/3 x Z", "F_2"] {
            let g = CayleyGraph::parse(term).unwrap();
            let seq = count_saws(&g, 7, &Budget::default()).unwrap();
            for workers in [1, 2, 3] {
                let p = Parallel::new(workers, Budget::default()).unwrap();
                assert_eq!(
                    p.count(&g, 7).unwrap(),
                    seq,
                    "{term} with {workers} workers"
                );
            }
        }
    }
}
