//! Chunked sweeps over index ranges, run on a rayon pool when the
//! `parallel` feature is enabled and sequentially otherwise.
//!
//! Chunk boundaries depend only on the range length, and results come back
//! in chunk order, so merged results do not depend on the worker count.

use std::ops::Range;
#[cfg(feature = "parallel")]
use std::sync::Arc;

/// Chunk length used by the census sweeps.
pub const CHUNK: usize = 1024;

#[derive(Clone)]
enum Mode {
    Sequential,
    #[cfg(feature = "parallel")]
    Pool(Arc<rayon::ThreadPool>),
}

#[derive(Clone)]
pub struct Exec {
    mode: Mode,
}

impl std::fmt::Debug for Exec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Exec({} workers)", self.workers())
    }
}

impl Default for Exec {
    fn default() -> Self {
        Exec::sequential()
    }
}

impl Exec {
    pub fn sequential() -> Self {
        Exec { mode: Mode::Sequential }
    }

    /// A pool with `workers` threads. One worker, or a build without the
    /// `parallel` feature, gives the sequential executor.
    pub fn parallel(workers: usize) -> Self {
        #[cfg(feature = "parallel")]
        {
            if workers > 1 {
                if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
                    return Exec { mode: Mode::Pool(Arc::new(pool)) };
                }
            }
        }
        let _ = workers;
        Exec::sequential()
    }

    pub fn workers(&self) -> usize {
        match &self.mode {
            Mode::Sequential => 1,
            #[cfg(feature = "parallel")]
            Mode::Pool(pool) => pool.current_num_threads(),
        }
    }

    /// Applies `g` to consecutive chunks of `0..len` and returns the results
    /// in chunk order.
    pub fn map_chunks<T, G>(&self, len: usize, chunk: usize, g: G) -> Vec<T>
    where
        T: Send,
        G: Fn(Range<usize>) -> T + Sync + Send,
    {
        let chunk = chunk.max(1);
        let ranges: Vec<Range<usize>> =
            (0..len).step_by(chunk).map(|s| s..(s + chunk).min(len)).collect();
        match &self.mode {
            Mode::Sequential => ranges.into_iter().map(g).collect(),
            #[cfg(feature = "parallel")]
            Mode::Pool(pool) => {
                use rayon::prelude::*;
                pool.install(|| ranges.into_par_iter().map(g).collect())
            }
        }
    }

    /// Maps every index of `0..len`, preserving order.
    pub fn map_indices<T, G>(&self, len: usize, g: G) -> Vec<T>
    where
        T: Send,
        G: Fn(usize) -> T + Sync + Send,
    {
        self.map_chunks(len, CHUNK, |r| r.map(&g).collect::<Vec<T>>())
            .into_iter()
            .flatten()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunk_results_are_ordered() {
        for exec in [Exec::sequential(), Exec::parallel(4)] {
            let sums = exec.map_chunks(10, 3, |r| r.sum::<usize>());
            assert_eq!(sums, vec![3, 12, 21, 9]);
            assert_eq!(exec.map_indices(5000, |i| i * 2)[4999], 9998);
        }
    }
}
