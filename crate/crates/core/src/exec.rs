//! Independent work items (seeds, benchmark rows, fuzz cases) run either on
//! a rayon pool or in a plain loop. Results always come back in input
//! order, so the choice never changes what is computed.
//!
//! Without the `parallel` feature every strategy runs sequentially.

use crate::instance::Instance;
use crate::sa::{anneal, SaConfig, SaError, SaResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// `workers = None` uses rayon's global pool.
    Parallel { workers: Option<usize> },
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel { workers: None }
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn with_workers(workers: usize) -> Self {
        if workers <= 1 {
            Execution::Sequential
        } else {
            Execution::Parallel { workers: Some(workers) }
        }
    }

    /// Applies `f` to every item, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            Execution::Parallel { workers } => parallel_map(items, f, workers),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: &[T], f: F, workers: Option<usize>) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;

    match workers {
        None => items.par_iter().map(f).collect(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
            Err(_) => items.par_iter().map(f).collect(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: &[T], f: F, _workers: Option<usize>) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Runs `seeds` independent chains with seeds `cfg.seed + i`.
pub fn anneal_seeds(inst: &Instance, cfg: &SaConfig, seeds: u64, exec: Execution) -> Result<Vec<SaResult>, SaError> {
    cfg.validate()?;
    let configs: Vec<SaConfig> = (0..seeds)
        .map(|i| SaConfig {
            seed: cfg.seed.wrapping_add(i),
            ..cfg.clone()
        })
        .collect();
    exec.map(&configs, |c| anneal(inst, c)).into_iter().collect()
}

/// The run with the smallest makespan; ties go to the lowest seed offset.
pub fn best_of(results: &[SaResult]) -> Option<&SaResult> {
    results.iter().min_by_key(|r| r.best_makespan)
}
