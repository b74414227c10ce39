//! Parallel/sequential execution shims.
//!
//! With the `parallel` feature (default) these fan out over rayon; without
//! it they run sequentially. Both paths produce identical results: outputs
//! keep input order and "first match" means leftmost.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..len`, preserving index order.
pub(crate) fn map_indexed<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Returns the leftmost `Some` produced by `f` over `0..len`.
pub(crate) fn find_map_first<U, F>(len: usize, f: F) -> Option<U>
where
    U: Send,
    F: Fn(usize) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).find_map(f)
    }
}
