//! Parallel/sequential dispatch for independent point sweeps.
//!
//! Sweeps map a pure function over an index range and collect results in
//! index order; reductions always run sequentially over that ordered vector.
//! The `parallel` feature therefore changes wall-clock time only — outputs
//! are bitwise identical with any thread count, or with the feature off.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, collecting results in index order. Runs on the rayon
/// pool when the `parallel` feature is enabled.
pub(crate) fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Always-sequential variant, kept as the baseline for benchmarks.
pub(crate) fn map_indexed_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

/// Dispatch between [`map_indexed`] and [`map_indexed_seq`].
pub(crate) fn map_indexed_mode<U, F>(sequential: bool, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    if sequential {
        map_indexed_seq(n, f)
    } else {
        map_indexed(n, f)
    }
}
