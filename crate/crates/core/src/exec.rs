//! Data-parallel helpers over index ranges.
//!
//! With the `parallel` feature these run on rayon; otherwise (or after
//! `set_parallel(false)`) they fall back to plain sequential loops. Every helper
//! returns results in index order, so output never depends on the schedule.

use std::sync::atomic::{AtomicBool, Ordering};

static PARALLEL: AtomicBool = AtomicBool::new(true);

/// Runtime switch, mainly for benchmarks comparing both execution modes.
pub fn set_parallel(on: bool) {
    PARALLEL.store(on, Ordering::Relaxed);
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && PARALLEL.load(Ordering::Relaxed)
}

// Below this many items the thread hand-off costs more than it saves.
#[cfg(feature = "parallel")]
const MIN_PARALLEL: u64 = 64;

#[cfg(feature = "parallel")]
fn go_parallel(n: u64) -> bool {
    n >= MIN_PARALLEL && parallel_enabled()
}

pub fn map_range<T, F>(n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(n) {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Keeps the indices whose predicate holds, in increasing order.
pub fn filter_range<F>(n: u64, f: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(n) {
        use rayon::prelude::*;
        return (0..n).into_par_iter().filter(|&i| f(i)).collect();
    }
    (0..n).filter(|&i| f(i)).collect()
}

/// The result for the smallest index where `f` yields `Some`.
pub fn find_first<T, F>(n: u64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(n) {
        use rayon::prelude::*;
        return (0..n).into_par_iter().find_map_first(f);
    }
    (0..n).find_map(f)
}

pub fn all<F>(n: u64, f: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    find_first(n, |i| if f(i) { None } else { Some(()) }).is_none()
}

/// Counts how often `f` lands in each bucket `0..buckets`.
pub fn histogram<F>(n: u64, buckets: usize, f: F) -> Vec<u64>
where
    F: Fn(u64) -> usize + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(n) {
        use rayon::prelude::*;
        return (0..n)
            .into_par_iter()
            .fold(
                || vec![0u64; buckets],
                |mut acc, i| {
                    acc[f(i)] += 1;
                    acc
                },
            )
            .reduce(
                || vec![0u64; buckets],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
    }
    let mut acc = vec![0u64; buckets];
    for i in 0..n {
        acc[f(i)] += 1;
    }
    acc
}
