//! Thin shim over rayon so every data-parallel loop has a sequential twin.
//!
//! With the `parallel` feature disabled, or when the current rayon pool has a
//! single thread, the helpers run plain iterators. Results never depend on the
//! worker count: `find_map_first` always yields the lowest-index hit.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of worker threads the helpers will use.
pub fn threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(feature = "parallel")]
fn go_parallel(len: usize) -> bool {
    len > 1 && threads() > 1
}

/// Maps every item, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(items.len()) {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Maps the index range `0..len`, preserving order.
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(len) {
        return (0..len).into_par_iter().map(f).collect();
    }
    (0..len).map(f).collect()
}

/// First item (by index) for which `f` returns `Some`.
pub fn find_map_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(items.len()) {
        return items.par_iter().find_map_first(f);
    }
    items.iter().find_map(f)
}

/// Folds `0..len` in chunks and merges the partial accumulators.
///
/// `merge` must be associative and commutative for the result to be
/// independent of the thread count.
pub fn fold_range<A, I, F, M>(len: usize, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, usize) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(len) {
        return (0..len)
            .into_par_iter()
            .with_min_len(256)
            .fold(&init, &fold)
            .reduce(&init, &merge);
    }
    #[cfg(not(feature = "parallel"))]
    let _ = merge;
    (0..len).fold(init(), fold)
}

/// Whether `f` holds for any index in `0..len`.
pub fn any_range<F>(len: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel(len) {
        return (0..len).into_par_iter().any(f);
    }
    (0..len).any(f)
}
