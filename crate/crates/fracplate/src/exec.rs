//! Execution policy for the data-parallel kernels.
//!
//! With the `parallel` feature (default) work is spread over the rayon pool;
//! without it every entry point runs sequentially. Results never depend on the
//! policy: each output slot is written by exactly one task and reductions run
//! in a fixed order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Number of workers the policy will use.
    pub fn workers(self) -> usize {
        match self {
            Execution::Sequential => 1,
            #[cfg(feature = "parallel")]
            Execution::Parallel => rayon::current_num_threads(),
        }
    }
}

/// Ordered map over `0..n`.
pub fn map_range<R, F>(exec: Execution, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
    }
}

/// Calls `f(index, item)` on every element of `items`.
pub fn for_each_mut<T, F>(exec: Execution, items: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter_mut().enumerate().for_each(|(i, t)| f(i, t)),
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter_mut().enumerate().for_each(|(i, t)| f(i, t)),
    }
}
