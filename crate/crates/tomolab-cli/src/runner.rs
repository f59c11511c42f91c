//! Parallel trial execution. Results come back in trial order regardless of
//! scheduling, so aggregation is deterministic.

use rayon::prelude::*;

use crate::error::AppError;

/// Builds the worker pool, honoring `TOMOLAB_THREADS` when set and never
/// spawning more workers than there are trials.
pub fn build_pool(trials: usize) -> Result<rayon::ThreadPool, AppError> {
    let threads = match std::env::var("TOMOLAB_THREADS") {
        Ok(v) => {
            let n: usize = v.parse().map_err(|_| {
                AppError::Config(format!(
                    "TOMOLAB_THREADS must be a positive integer, got '{v}'"
                ))
            })?;
            if n == 0 {
                return Err(AppError::Config(
                    "TOMOLAB_THREADS must be a positive integer, got '0'".to_string(),
                ));
            }
            n
        }
        Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.min(trials.max(1)))
        .build()
        .map_err(|e| AppError::Other(format!("cannot build thread pool: {e}")))
}

pub fn thread_count(pool: &rayon::ThreadPool) -> usize {
    pool.current_num_threads()
}

/// Runs `work(trial)` for every trial index on the pool and collects the
/// per-trial outcomes in index order.
pub fn run_trials<T, F>(
    pool: &rayon::ThreadPool,
    trials: usize,
    work: F,
) -> Vec<Result<T, tomolab::error::Error>>
where
    T: Send,
    F: Fn(usize) -> Result<T, tomolab::error::Error> + Sync,
{
    pool.install(|| (0..trials).into_par_iter().map(|i| work(i)).collect())
}

/// Splits trial outcomes into successes (with their indices) and error strings.
pub fn partition<T>(
    results: Vec<Result<T, tomolab::error::Error>>,
) -> (Vec<(usize, T)>, Vec<(usize, String)>) {
    let mut ok = Vec::new();
    let mut failed = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => ok.push((i, v)),
            Err(e) => failed.push((i, e.to_string())),
        }
    }
    (ok, failed)
}
