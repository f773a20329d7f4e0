//! Data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature the mapping helper fans out over
//! rayon's global pool; without it the same signature degrades to plain
//! iteration. [`seq_map`] is always sequential, so a single build can
//! benchmark both paths against each other.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over a slice, in parallel when built with the `parallel` feature.
pub fn par_map<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential mapping with the same shape as [`par_map`].
pub fn seq_map<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    items.iter().map(f).collect()
}
