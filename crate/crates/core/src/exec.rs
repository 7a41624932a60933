//! Execution-mode switch for the data-parallel sweeps.
//!
//! Every exhaustive checker in this crate walks a large index space and folds
//! per-index observations into a report.  The walk is expressed once, through
//! [`sweep`], and can run sequentially or on the rayon thread pool.  Results
//! are merged in ascending chunk order in both modes, so a report is
//! byte-identical regardless of mode or thread count.
//!
//! The `parallel` cargo feature gates the rayon dependency entirely: without
//! it the crate builds sequential-only and [`ExecMode::Parallel`] degrades to
//! the sequential path.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExecMode {
    Sequential,
    /// Chunked execution on the global rayon pool (with the `parallel`
    /// feature; otherwise an alias for sequential execution).
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

impl fmt::Display for ExecMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExecMode::Sequential => write!(f, "sequential"),
            ExecMode::Parallel => write!(f, "parallel"),
        }
    }
}

/// Cap the global rayon pool at `n` threads.  Returns whether the request
/// took effect (the pool can only be built once per process; later calls and
/// sequential-only builds report `false`).
pub fn configure_threads(n: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
        false
    }
}

/// Default chunk length for [`sweep`]: large enough to amortize scheduling,
/// small enough to load-balance the heavy axiom blocks.
pub const CHUNK: u64 = 1 << 14;

/// Fold `step` over `0..len` in chunks of `chunk` indices.  `init` seeds one
/// accumulator per chunk, `merge` combines accumulators strictly in ascending
/// chunk order.  Callers with expensive steps pass a small `chunk` for load
/// balance; `0` means [`CHUNK`].
///
/// Determinism contract: `step` must depend only on its index argument, and
/// `merge` must be associative over adjacent ranges; the checkers uphold both
/// by construction (each index addresses one tuple of an enumeration).
pub fn sweep<A, I, S, M>(mode: ExecMode, len: u64, chunk: u64, init: I, step: S, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, u64) + Sync,
    M: Fn(&mut A, A),
{
    let chunk = if chunk == 0 { CHUNK } else { chunk };
    match mode {
        ExecMode::Sequential => {
            let mut acc = init();
            for i in 0..len {
                step(&mut acc, i);
            }
            acc
        }
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                let chunks = len.div_ceil(chunk);
                let parts: Vec<A> = (0..chunks)
                    .into_par_iter()
                    .map(|c| {
                        let lo = c * chunk;
                        let hi = (lo + chunk).min(len);
                        let mut acc = init();
                        for i in lo..hi {
                            step(&mut acc, i);
                        }
                        acc
                    })
                    .collect();
                let mut acc = init();
                for part in parts {
                    merge(&mut acc, part);
                }
                acc
            }
            #[cfg(not(feature = "parallel"))]
            {
                let mut acc = init();
                for i in 0..len {
                    step(&mut acc, i);
                }
                acc
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_mode(mode: ExecMode) -> u64 {
        sweep(mode, 100_000, 937, || 0u64, |acc, i| *acc += i * i, |acc, part| *acc += part)
    }

    #[test]
    fn modes_agree() {
        assert_eq!(sum_mode(ExecMode::Sequential), sum_mode(ExecMode::Parallel));
    }

    #[test]
    fn empty_sweep() {
        let n = sweep(ExecMode::Parallel, 0, 0, || 7u64, |_, _| {}, |a, b| *a += b);
        assert_eq!(n, 7);
    }
}
