//! Data-parallel sweeps with a sequential fallback.
//!
//! Every exhaustive check in the crate funnels its outer loop through
//! [`Exec`]. With the `parallel` feature the outer loop is split across the
//! rayon pool; without it, [`Exec::Parallel`] degrades to the sequential
//! path. Both paths return results in index order, so reports are identical.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when this mode actually fans out to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Map `f` over `0..n`, preserving order.
    pub fn map_range<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Map `f` over a slice, preserving order.
    pub fn map_slice<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

/// Configure the global worker pool. Returns the mode callers should use.
///
/// `workers == 1` selects the sequential path outright.
pub fn configure_workers(workers: Option<usize>) -> Exec {
    match workers {
        Some(1) => Exec::Sequential,
        #[cfg(feature = "parallel")]
        Some(n) if n > 1 => {
            // The global pool can only be built once per process.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Exec::Parallel
        }
        _ => Exec::Parallel,
    }
}
