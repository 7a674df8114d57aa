//! Order-preserving map over a batch of independent work items.
//!
//! Experiment sweeps (identity trials, growth radii, scaling sizes, sampled
//! subsets) funnel through [`map`], which dispatches to rayon when the
//! `parallel` feature is enabled and to a plain iterator otherwise. Both
//! paths preserve input order, so results — and every report built from
//! them — are identical regardless of the execution mode. The sequential
//! path stays compiled under the parallel build for benchmarking.

/// Sequential reference path.
pub fn map_sequential<T, U>(items: Vec<T>, f: impl Fn(T) -> U) -> Vec<U> {
    items.into_iter().map(f).collect()
}

/// Rayon path; order-preserving collect.
#[cfg(feature = "parallel")]
pub fn map_parallel<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

/// Feature-dispatched map. Bounds match the parallel path so switching the
/// feature never changes caller code.
pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}
