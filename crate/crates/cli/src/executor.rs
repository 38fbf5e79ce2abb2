use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};
use twochoice_core::montecarlo::{TrialExecutor, TrialResult};

/// Runs trials on a dedicated rayon pool.
///
/// Results come back in trial order. Each trial seeds its own streams, so
/// the output does not depend on the number of threads.
pub struct ParallelExecutor {
    pool: ThreadPool,
}

impl ParallelExecutor {
    pub fn new(threads: usize) -> Result<Self, ThreadPoolBuildError> {
        let pool = ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .thread_name(|i| format!("twochoice-worker-{i}"))
            .build()?;
        Ok(Self { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl TrialExecutor for ParallelExecutor {
    fn map_trials(&self, trials: u64, job: &(dyn Fn(u64) -> TrialResult + Sync)) -> Vec<TrialResult> {
        self.pool.install(|| (0..trials).into_par_iter().map(job).collect())
    }
}

/// Worker count when neither `--jobs` nor the environment sets one.
pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}
