//! Index-ordered parallel map with a sequential fallback.
//!
//! Results are always returned in index order, so reductions over them are
//! deterministic regardless of scheduling. Without the `parallel` feature every
//! executor runs sequentially.

/// Environment variable capping the worker count (`0` = one per core).
pub const THREADS_ENV: &str = "ELLITRI_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// `threads == 0` uses the global pool.
    Parallel { threads: usize },
}

impl Exec {
    /// Reads [`THREADS_ENV`]; unset or unparsable values mean automatic.
    pub fn from_env() -> Self {
        let threads = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(0);
        Exec::Parallel { threads }
    }

    pub fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match *self {
            Exec::Sequential => (0..n).map(f).collect(),
            Exec::Parallel { threads } => parallel_map(threads, n, f),
        }
    }
}

impl Default for Exec {
    fn default() -> Self {
        Exec::Parallel { threads: 0 }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(threads: usize, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    let run = || (0..n).into_par_iter().map(&f).collect();
    if threads == 0 {
        return run();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(run),
        Err(_) => (0..n).map(&f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(_threads: usize, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}
