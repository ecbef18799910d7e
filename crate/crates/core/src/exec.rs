//! Execution strategy for the data-parallel sweeps.
//!
//! Batch work in this crate (restart fans, graph sweeps) is expressed as a
//! map over `0..count` whose output order is the index order, so the choice
//! of strategy never changes a result, only how it is scheduled. With the
//! `parallel` feature (on by default) the parallel strategy runs on rayon;
//! without it only [`Execution::Sequential`] exists and everything runs
//! inline.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Execution {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        Execution::Parallel
    }
    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        Execution::Sequential
    }
}

/// Maps `f` over `0..count`, returning results in index order.
pub fn map_indexed<T, F>(execution: Execution, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match execution {
        Execution::Sequential => (0..count).map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..count).into_par_iter().map(f).collect(),
    }
}
