//! Execution strategy for the data-parallel loops (closure frontiers,
//! conjugation tables, pair sums).
//!
//! With the `parallel` feature the loops run on the rayon pool; without it
//! every strategy degrades to the sequential path. Both paths produce
//! identical results: reductions are exact, so summation order is irrelevant.

/// How a data-parallel loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon when compiled with the `parallel` feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Map `f` over `0..len` and collect in index order.
    pub fn map_collect<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..len).into_par_iter().map(f).collect()
            }
            _ => (0..len).map(f).collect(),
        }
    }

    /// Map `f` over `0..len` and fold the results with an associative,
    /// commutative `combine`.
    pub fn map_reduce<T, F, R>(self, len: usize, identity: T, f: F, combine: R) -> T
    where
        T: Send + Sync + Clone,
        F: Fn(usize) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..len)
                    .into_par_iter()
                    .map(f)
                    .reduce(|| identity.clone(), &combine)
            }
            _ => (0..len).map(f).fold(identity, combine),
        }
    }
}
