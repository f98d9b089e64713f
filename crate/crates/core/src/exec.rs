//! Data-parallel mapping with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] runs on the
//! rayon pool; without it every mode runs sequentially. Output order always
//! follows input order.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when this mode actually fans out on the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

pub fn map_ordered<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }
    let _ = exec;
    items.iter().enumerate().map(|(i, t)| f(i, t)).collect()
}

/// Runs `op` on a dedicated pool of `workers` threads when parallel, or
/// directly otherwise.
pub fn with_workers<R: Send>(
    exec: Execution,
    workers: Option<usize>,
    op: impl FnOnce() -> R + Send,
) -> R {
    #[cfg(feature = "parallel")]
    if let (true, Some(n)) = (exec.is_parallel(), workers) {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            return pool.install(op);
        }
    }
    let _ = (exec, workers);
    op()
}
