//! Data-parallel execution helpers.
//!
//! Corpus-scale stages map an independent function over records. With the
//! default `parallel` feature this runs on rayon; without it the same API
//! degrades to a sequential loop. Output order always matches input order,
//! so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving order.
#[cfg(feature = "parallel")]
pub fn map_items<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Map `f` over `items`, preserving order.
#[cfg(not(feature = "parallel"))]
pub fn map_items<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    map_items_seq(items, f)
}

/// Sequential reference path. Always available; the benchmark suite uses it
/// as the baseline against the parallel path.
pub fn map_items_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Cap worker threads for all subsequent parallel maps. Zero keeps the
/// default (one worker per core). Only the first call in a process takes
/// effect; later calls are ignored.
#[cfg(feature = "parallel")]
pub fn configure_jobs(jobs: usize) {
    if jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
}

/// Without the `parallel` feature everything is sequential already.
#[cfg(not(feature = "parallel"))]
pub fn configure_jobs(_jobs: usize) {}
